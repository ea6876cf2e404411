#include "tailsitter/rotor_aero.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "tailsitter/errors.hpp"

namespace tailsitter {

namespace {

constexpr double kHoverSlipstream = 2.3590;
constexpr int kNewtonBudget = 60;
constexpr int kBisectionBudget = 200;
constexpr double kResidualTol = 1e-12;
constexpr double kStoppedInflow = 1e-6;  // m/s

struct Inflow {
    double axial;  // V_b cos(alpha)
    double edge;   // V_b sin(alpha)
};

// Momentum bookkeeping of the pair at fixed (v_u, inflow).
struct Pair {
    double rho_a;
    double v_u;
    Inflow in;
    double m_u;
    double F_cu;
    double P_cu;

    Pair(double rho_a_, double v_u_, Inflow in_) : rho_a(rho_a_), v_u(v_u_), in(in_) {
        m_u = rho_a * std::hypot(in.edge, in.axial + v_u);
        F_cu = 2.0 * m_u * v_u;
        P_cu = F_cu * (in.axial + v_u);
    }

    // Lower-rotor mass flow: inner part sees the upper wake, outer part free stream.
    double m_l(double v_l) const {
        const double inner = 0.5 * rho_a * std::hypot(in.axial + 2.0 * v_u + v_l, in.edge);
        const double outer = 0.5 * rho_a * std::hypot(in.axial + v_l, in.edge);
        return inner + outer;
    }

    double F_cl(double v_l, double w_l) const { return m_l(v_l) * w_l - 2.0 * m_u * v_u; }

    double P_cl(double v_l, double w_l) const { return F_cl(v_l, w_l) * (in.axial + v_u + v_l); }

    double energy(double v_l, double w_l) const {
        const double vc = in.axial;
        return 0.5 * m_l(v_l) * ((vc + w_l) * (vc + w_l) - vc * vc) -
               0.5 * m_u * ((vc + 2.0 * v_u) * (vc + 2.0 * v_u) - vc * vc);
    }

    // Residuals scaled by the upper-rotor power.
    Eigen::Vector2d residual(double v_l, double w_l) const {
        return {(P_cl(v_l, w_l) - P_cu) / P_cu, (energy(v_l, w_l) - P_cu) / P_cu};
    }

    // The equal-power relation is linear in w_l.
    double w_l_from_power(double v_l) const {
        return (P_cu / (in.axial + v_u + v_l) + 2.0 * m_u * v_u) / m_l(v_l);
    }
};

bool try_newton(const Pair& pair, double& v_l, double& w_l, int& iterations) {
    for (int it = 0; it < kNewtonBudget; ++it) {
        iterations = it + 1;
        const Eigen::Vector2d r = pair.residual(v_l, w_l);
        if (r.lpNorm<Eigen::Infinity>() < kResidualTol) return true;

        const double hv = 1e-7 * std::max(v_l, pair.v_u);
        const double hw = 1e-7 * std::max(w_l, pair.v_u);
        Eigen::Matrix2d jac;
        jac.col(0) = (pair.residual(v_l + hv, w_l) - pair.residual(v_l - hv, w_l)) / (2.0 * hv);
        jac.col(1) = (pair.residual(v_l, w_l + hw) - pair.residual(v_l, w_l - hw)) / (2.0 * hw);
        if (std::abs(jac.determinant()) < 1e-300) return false;
        const Eigen::Vector2d step = jac.partialPivLu().solve(-r);

        double lambda = 1.0;
        const double r0 = r.norm();
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls) {
            const double vn = v_l + lambda * step.x();
            const double wn = w_l + lambda * step.y();
            if (vn > 0.0 && wn > 0.0 && pair.residual(vn, wn).norm() < (1.0 - 1e-4 * lambda) * r0) {
                v_l = vn;
                w_l = wn;
                accepted = true;
                break;
            }
            lambda *= 0.5;
        }
        if (!accepted) return false;
    }
    return pair.residual(v_l, w_l).lpNorm<Eigen::Infinity>() < kResidualTol;
}

// Outer bisection on v_l; the inner unknown w_l follows from the power relation.
bool try_bisection(const Pair& pair, double& v_l, double& w_l, int& iterations) {
    auto g = [&](double x) { return pair.energy(x, pair.w_l_from_power(x)) - pair.P_cu; };
    double lo = 1e-12 * pair.v_u;
    double hi = pair.v_u;
    const double g_lo = g(lo);
    int grow = 0;
    while (g(hi) * g_lo > 0.0) {
        hi *= 2.0;
        if (++grow > 60) return false;
    }
    for (int it = 0; it < kBisectionBudget; ++it) {
        iterations = it + 1;
        const double mid = 0.5 * (lo + hi);
        if ((g(mid) > 0.0) == (g_lo > 0.0)) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15 * hi) break;
    }
    v_l = 0.5 * (lo + hi);
    w_l = pair.w_l_from_power(v_l);
    return pair.residual(v_l, w_l).lpNorm<Eigen::Infinity>() < 1e-9;
}

}  // namespace

double CoaxGeometry::area() const { return std::numbers::pi * (R_r * R_r - l_a * l_a); }

double hover_thrust_coefficient() { return 2.0 + 2.0 / (1.0 + solve_hover_ratio()); }

double CoaxGeometry::k_bar_u() const {
    return hover_thrust_coefficient() * rho * area() * lambda_c * lambda_c * R_d * R_d;
}

double solve_hover_ratio() {
    auto f = [](double r) { return ((2.0 * r + 5.0) * r + 2.0) * r - 2.0; };
    auto df = [](double r) { return (6.0 * r + 10.0) * r + 2.0; };
    double lo = 0.0, hi = 1.0, r = 0.44;
    for (int it = 0; it < 100; ++it) {
        const double fr = f(r);
        if (fr > 0.0) hi = r; else lo = r;
        double next = r - fr / df(r);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - r) < 1e-16) return next;
        r = next;
    }
    return r;
}

CoaxFlowState solve_coax_induced_flow(double v_u, double alpha, double V_b, const CoaxGeometry& geom) {
    if (!(v_u > 0.0) || !std::isfinite(v_u)) throw DomainError("upper induced velocity must be positive");
    if (!(alpha >= kCoaxAlphaMin && alpha <= kCoaxAlphaMax) || !(V_b >= 0.0 && V_b <= kCoaxSpeedMax)) {
        throw NoConvergence("coaxial inflow outside the momentum-theory envelope");
    }
    if (!(geom.area() > 0.0)) throw DomainError("coaxial effective area must be positive");

    const Pair pair(geom.rho * geom.area(), v_u, {V_b * std::cos(alpha), V_b * std::sin(alpha)});

    double v_l = solve_hover_ratio() * v_u;
    double w_l = kHoverSlipstream * v_u;
    int iterations = 0;
    if (!try_newton(pair, v_l, w_l, iterations)) {
        int bisect_iterations = 0;
        if (!try_bisection(pair, v_l, w_l, bisect_iterations)) {
            throw NoConvergence("coaxial flow solver exceeded its iteration budget (v_u=" + std::to_string(v_u) +
                                ", alpha=" + std::to_string(alpha) + ", V_b=" + std::to_string(V_b) + ")");
        }
        iterations += bisect_iterations;
    }

    CoaxFlowState s;
    s.v_u = v_u;
    s.v_l = v_l;
    s.w_u = 2.0 * v_u;
    s.w_l = w_l;
    s.F_cu = pair.F_cu;
    s.F_cl = pair.F_cl(v_l, w_l);
    s.P_cu = pair.P_cu;
    s.P_cl = pair.P_cl(v_l, w_l);
    s.iterations = iterations;
    return s;
}

CoaxThrust coax_thrust_truth(double omega_u, double alpha, double V_b, const CoaxGeometry& geom) {
    if (omega_u < 0.0) throw DomainError("rotor speed must be nonnegative");
    const double scale = geom.lambda_c * geom.R_d;
    // a rotor this slow carries no thrust worth resolving and the momentum balance loses precision
    if (scale * omega_u < kStoppedInflow) return {};
    CoaxThrust out;
    out.flow = solve_coax_induced_flow(scale * omega_u, alpha, V_b, geom);
    out.F_c = out.flow.F_cu + out.flow.F_cl;
    out.omega_l = out.flow.v_l / scale;
    return out;
}

double coax_thrust_nominal(double omega_u, const CoaxGeometry& geom) { return geom.k_bar_u() * omega_u * omega_u; }

double induced_power_factor_coax() { return 2.0 / 1.5614; }

double induced_power_factor_total(double zeta, double eta) {
    if (!(zeta > 0.0 && zeta < 1.0)) throw DomainError("zeta must lie in (0, 1)");
    if (!(eta > 0.0)) throw DomainError("eta must be positive");
    const double quad = 2.0 * 4.4164 * std::pow(zeta, 1.5) * std::sqrt(eta);
    return (2.0 + quad) / (1.5614 + quad);
}

double QuadRotorParams::roll_lever() const { return k + std::numbers::sqrt2 * l_3 * k_f / 2.0; }

double QuadRotorParams::roll_coefficient(FlightMode mode) const {
    return mode == FlightMode::transition ? roll_lever() : k;
}

Wrench quad_rotor_wrench(const std::array<double, 4>& w, const QuadRotorParams& p, FlightMode mode) {
    const double s1 = w[0] * w[0], s2 = w[1] * w[1], s3 = w[2] * w[2], s4 = w[3] * w[3];
    Wrench out = Wrench::zero(Frame::body);
    out.force.x() = p.b * (s1 + s2 + s3 + s4);
    out.torque.x() = p.roll_coefficient(mode) * (s1 - s2 + s3 - s4);
    out.torque.y() = (s1 + s2 - s3 - s4) * p.b * p.l_3 / 2.0;
    out.torque.z() = (-s1 + s2 + s3 - s4) * p.b * p.l_3 / 2.0;
    return out;
}

Vec3 gyroscopic_torque(const BodyRates& omega_body, const std::array<double, 4>& omegas, double J_r) {
    // (-1)^i for i = 1..4
    const double net = -omegas[0] + omegas[1] - omegas[2] + omegas[3];
    return J_r * omega_body.cross(Vec3::UnitZ()) * net;
}

}  // namespace tailsitter
