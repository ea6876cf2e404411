#include "tailsitter/trajectory.hpp"

#include <cmath>
#include <numbers>

#include "tailsitter/dynamics.hpp"

namespace tailsitter {

namespace {

constexpr double kScanStep = 0.005;
constexpr double kScanTail = 60.0;

struct Blend {
    double w, w_dot, w_ddot;
};

}  // namespace

TransitionParams TransitionParams::hover_to_level_defaults() { return {}; }

TransitionParams TransitionParams::level_to_hover_defaults() {
    TransitionParams p;
    p.k_m = 0.005;
    return p;
}

double TransitionParams::t_m(TransitionKind kind) const {
    return kind == TransitionKind::hover_to_level ? (v_f - v_0) / a : v_f / a;
}

TransitionReference::TransitionReference(TransitionKind kind, const TransitionParams& params)
    : kind_(kind), params_(params) {
    initial_cruise_ = cruise_regime(0.0);
    const double horizon = params_.t_m(kind_) + kScanTail;
    bool regime = initial_cruise_;
    double prev = 0.0;
    for (double t = kScanStep; t <= horizon; t += kScanStep) {
        if (cruise_regime(t) == regime) {
            prev = t;
            continue;
        }
        double lo = prev, hi = t;
        for (int i = 0; i < 80; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (cruise_regime(mid) == regime) lo = mid; else hi = mid;
        }
        switches_.push_back(hi);
        regime = !regime;
        prev = t;
    }
}

TrajectoryPoint TransitionReference::path(double t) const {
    const TransitionParams& p = params_;
    const double t_m = p.t_m(kind_);
    const double h0 = p.h_0, k = p.k_m, a = p.a;
    TrajectoryPoint pt;
    pt.t = t;
    if (kind_ == TransitionKind::hover_to_level) {
        const double s = 0.5 * a * t * t + p.v_0 * t;
        const double sd = a * t + p.v_0;
        if (t <= t_m) {
            pt.x_d = s;
            pt.xdot_d = sd;
            pt.xddot_d = a;
        } else {
            pt.x_d = 0.5 * a * t_m * t_m + p.v_0 * t_m + p.v_f * (t - t_m);
            pt.xdot_d = p.v_f;
        }
        const double e = std::exp(-k * s);
        pt.z_d = h0 * (1.0 - e);
        pt.zdot_d = h0 * k * sd * e;
        pt.zddot_d = h0 * k * (a - k * sd * sd) * e;
        pt.zdddot_d = h0 * k * k * sd * e * (k * sd * sd - 3.0 * a);
    } else {
        if (t <= t_m) {
            pt.x_d = p.v_f * t - 0.5 * a * t * t;
            pt.xdot_d = p.v_f - a * t;
            pt.xddot_d = -a;
        } else {
            pt.x_d = p.v_f * t_m - 0.5 * a * t_m * t_m;
        }
        const double g = k * a;
        const double e = std::exp(-0.5 * g * t * t);
        pt.z_d = h0 * (1.0 - e);
        pt.zdot_d = h0 * g * t * e;
        pt.zddot_d = h0 * g * (1.0 - g * t * t) * e;
        pt.zdddot_d = h0 * g * g * t * e * (g * t * t - 3.0);
    }
    return pt;
}

bool TransitionReference::cruise_regime(double t) const {
    const TrajectoryPoint pt = path(t);
    if (std::abs(pt.xdot_d) < kPathSpeedFloor && std::abs(pt.zdot_d) < kPathSpeedFloor) {
        return std::numbers::pi / 2.0 <= params_.gamma_s;
    }
    return std::atan2(pt.zdot_d, pt.xdot_d) <= params_.gamma_s;
}

TrajectoryPoint TransitionReference::point(double t) const {
    TrajectoryPoint pt = path(t);
    Blend b{initial_cruise_ ? 1.0 : 0.0, 0.0, 0.0};
    const double tb = params_.blend_time;
    // blends toward alpha_d = 0 finish at the switch, blends toward alpha_d0 start there
    bool cruise = initial_cruise_;
    for (double ts : switches_) {
        cruise = !cruise;
        const double to = cruise ? 1.0 : 0.0;
        const double start = to == 0.0 ? ts - tb : ts;
        if (t < start) break;
        const double from = b.w;
        const double tau = t - start;
        if (tau < tb) {
            const double c = std::numbers::pi / tb;
            b = {from + (to - from) * 0.5 * (1.0 - std::cos(c * tau)), (to - from) * 0.5 * c * std::sin(c * tau),
                 (to - from) * 0.5 * c * c * std::cos(c * tau)};
        } else {
            b = {to, 0.0, 0.0};
        }
    }
    pt.alpha_d = params_.alpha_d0 * b.w;
    pt.alphadot_d = params_.alpha_d0 * b.w_dot;
    pt.alphaddot_d = params_.alpha_d0 * b.w_ddot;
    const DesiredAttitude att = desired_attitude(pt, params_);
    pt.gamma_d = att.gamma_d;
    pt.theta_d = att.theta_d;
    return pt;
}

DesiredAttitude TransitionReference::attitude(double t) const { return desired_attitude(point(t), params_); }

TrajectoryPoint hover_to_level(double t, const TransitionParams& p) {
    return TransitionReference(TransitionKind::hover_to_level, p).point(t);
}

TrajectoryPoint level_to_hover(double t, const TransitionParams& p) {
    return TransitionReference(TransitionKind::level_to_hover, p).point(t);
}

DesiredAttitude desired_attitude(const TrajectoryPoint& pt, const TransitionParams& /*p*/, double held_gamma) {
    DesiredAttitude d;
    double gamma_dot = 0.0, gamma_ddot = 0.0;
    if (std::abs(pt.xdot_d) < kPathSpeedFloor && std::abs(pt.zdot_d) < kPathSpeedFloor) {
        d.gamma_d = held_gamma;
        d.gamma_held = true;
    } else {
        d.gamma_d = std::atan2(pt.zdot_d, pt.xdot_d);
        const double den = pt.xdot_d * pt.xdot_d + pt.zdot_d * pt.zdot_d;
        const double num = pt.xdot_d * pt.zddot_d - pt.zdot_d * pt.xddot_d;
        const double num_dot = pt.xdot_d * pt.zdddot_d - pt.zdot_d * pt.xdddot_d;
        const double den_dot = 2.0 * (pt.xdot_d * pt.xddot_d + pt.zdot_d * pt.zddot_d);
        gamma_dot = num / den;
        gamma_ddot = (num_dot * den - num * den_dot) / (den * den);
    }
    d.alpha_d = pt.alpha_d;
    d.theta_d = d.alpha_d + d.gamma_d;
    d.q_d = flight_attitude({0.0, d.theta_d, 0.0});
    d.omega_d = BodyRates(0.0, pt.alphadot_d + gamma_dot, 0.0);
    d.omega_d_dot = Vec3(0.0, pt.alphaddot_d + gamma_ddot, 0.0);
    return d;
}

}  // namespace tailsitter
