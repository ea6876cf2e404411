#include "tailsitter/observer.hpp"

#include <cmath>

namespace tailsitter {

namespace {

double sign0(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

}  // namespace

FtcObserverState observer_step(const FtcObserverState& obs, double measured_zeta1, double Xi, double dt) {
    const double e = obs.zeta1_hat - measured_zeta1;
    const double s = sign0(e);
    FtcObserverState out = obs;
    out.zeta1_hat = obs.zeta1_hat + dt * (obs.zeta2_hat + Xi - obs.k1 * std::sqrt(std::abs(e)) * s);
    out.zeta2_hat = obs.zeta2_hat - dt * obs.k2 * s;
    return out;
}

FtcObserverState observer_step_implicit(const FtcObserverState& obs, double measured_zeta1, double Xi, double dt) {
    // e+ + (dt^2 k2 + dt k1 sqrt|e+|) s+ = c,  s+ in Sgn(e+)
    const double c = obs.zeta1_hat + dt * (obs.zeta2_hat + Xi) - measured_zeta1;
    const double dead = dt * dt * obs.k2;
    double e_next = 0.0;
    double s_next = 0.0;
    if (std::abs(c) <= dead) {
        s_next = c / dead;
    } else {
        const double a = dt * obs.k1;
        const double u = 0.5 * (-a + std::sqrt(a * a + 4.0 * (std::abs(c) - dead)));
        s_next = sign0(c);
        e_next = s_next * u * u;
    }
    FtcObserverState out = obs;
    out.zeta2_hat = obs.zeta2_hat - dt * obs.k2 * s_next;
    out.zeta1_hat = measured_zeta1 + e_next;
    return out;
}

ObserverGains ObserverGains::baseline() {
    return {{5.0, 4.0, 6.0, 6.0, 3.0, 6.0}, {10.0, 6.0, 8.0, 11.0, 7.0, 11.0}};
}

ObserverGains ObserverGains::scenario_default() {
    ObserverGains g = baseline();
    g.k1[3] = 12.0;
    g.k1[4] = 11.0;
    g.k1[5] = 14.0;
    g.k2[3] = 35.0;
    g.k2[4] = 30.0;
    g.k2[5] = 50.0;
    return g;
}

ObserverBank::ObserverBank(const ObserverGains& gains, ObserverScheme scheme) : scheme_(scheme) {
    for (int i = 0; i < 6; ++i) {
        channels_[i].k1 = gains.k1[i];
        channels_[i].k2 = gains.k2[i];
    }
}

void ObserverBank::reset(const Vec6& measured) {
    for (int i = 0; i < 6; ++i) {
        channels_[i].zeta1_hat = measured[i];
        channels_[i].zeta2_hat = 0.0;
        converged_[i] = false;
        streak_[i] = 0;
        converged_at_[i] = 0.0;
    }
    steps_ = 0;
}

void ObserverBank::step(const Vec6& measured, const Vec6& Xi, double dt, double t) {
    for (int i = 0; i < 6; ++i) {
        channels_[i] = scheme_ == ObserverScheme::implicit_euler
                           ? observer_step_implicit(channels_[i], measured[i], Xi[i], dt)
                           : observer_step(channels_[i], measured[i], Xi[i], dt);
        if (std::abs(channels_[i].zeta1_hat - measured[i]) < kConvergenceTol) {
            if (++streak_[i] >= kConvergenceSteps && !converged_[i]) {
                converged_[i] = true;
                converged_at_[i] = t;
            }
        } else {
            streak_[i] = 0;
        }
    }
    ++steps_;
}

Vec6 ObserverBank::disturbance_hat() const {
    Vec6 d;
    for (int i = 0; i < 6; ++i) d[i] = channels_[i].zeta2_hat;
    return d;
}

Vec6 known_dynamics(const State& s, const ActuatorCommand& cmd, const AircraftParams& params) {
    const Mat3 r = quat_to_rotmat(s.q);
    const Vec3 v_body = r.transpose() * s.v;
    const FlowAngles flow = flow_angles(pitch_angle(s.q), s.v, v_body);

    const Wrench quad = quad_rotor_wrench(cmd.omega, params.quad, cmd.mode);
    const WingForces wf = wing_forces(flow.alpha, v_body, -cmd.delta_12, cmd.delta_12, params.wing, params.rho);
    const Wrench wing = wing_wrench(wf, flow.alpha, params.wing);
    const Wrench fuselage = fuselage_wrench(flow.alpha, v_body, params.fuselage, params.rho);

    Vec3 force = quad.force + wing.force + fuselage.force;
    force.x() += coax_thrust_nominal(cmd.omega_u, params.coax_geometry());

    Vec3 torque = quad.torque + gyroscopic_torque(s.omega, cmd.omega, params.quad.J_r);
    if (cmd.mode == FlightMode::forward) {
        torque.x() += params.wing.l_w * std::cos(flow.alpha) * (wf.L2 - wf.L1);
    } else {
        torque += wing.torque;
    }

    const Vec3& J = params.inertia.J;
    Vec6 xi;
    xi.head<3>() = r * force / params.inertia.m - params.inertia.g * Vec3::UnitZ();
    xi.tail<3>() = (torque - s.omega.cross(J.cwiseProduct(s.omega))).cwiseQuotient(J);
    return xi;
}

Vec6 observer_measurement(const State& s) {
    Vec6 m;
    m.head<3>() = s.v;
    m.tail<3>() = s.omega;
    return m;
}

DisturbanceEstimate estimate_disturbances(const ObserverBank& bank, const State& s, const AircraftParams& params) {
    const Vec6 d = bank.disturbance_hat();
    DisturbanceEstimate out;
    out.force_body = params.inertia.m * quat_to_rotmat(s.q).transpose() * d.head<3>();
    out.torque_body = params.inertia.J.cwiseProduct(d.tail<3>());
    return out;
}

}  // namespace tailsitter
