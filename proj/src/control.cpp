#include "tailsitter/control.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tailsitter/errors.hpp"

namespace tailsitter {

namespace {

// Clamp a squared speed to the feasible range and return the speed.
double speed_from_square(double square, double omega_max, bool& saturated) {
    if (square < 0.0) {
        saturated = true;
        square = 0.0;
    }
    double w = std::sqrt(square);
    if (w > omega_max) {
        saturated = true;
        w = omega_max;
    }
    return w;
}

using Mat43 = Eigen::Matrix<double, 4, 3>;

// Largest s in [0, 1] keeping base + s * dir nonnegative.
double feasible_scale(const Eigen::Vector4d& base, const Eigen::Vector4d& dir) {
    double s = 1.0;
    for (int i = 0; i < 4; ++i) {
        if (base[i] + dir[i] < 0.0 && dir[i] < 0.0) s = std::min(s, std::max(base[i], 0.0) / -dir[i]);
    }
    return s;
}

// Rotor speeds for thrust F and torque demand (already divided by the per-axis coefficients). Squared quad
// speeds are total/4 plus signed torque terms. If the K split leaves too little collective for the torques,
// collective moves from the coax to the quad rotors, and torque wins over thrust when F itself is too small.
// Anything still infeasible (omega_max) is shed in priority order roll, pitch, yaw. Clamping a single rotor to
// zero instead would leak a large torque into the stiff roll axis.
void spin_rotors(double F, const Vec3& demand, const Mat43& signs, const AllocationParams& p,
                 ActuatorCommand& cmd) {
    const Eigen::Vector4d torque_terms = signs * demand;
    double total = F / (p.b * (1.0 + p.K));
    const double needed = std::max(0.0, -torque_terms.minCoeff());
    if (total < needed) {
        cmd.saturated = true;
        total = needed;
    }
    Eigen::Vector4d squares = Eigen::Vector4d::Constant(total) + torque_terms;
    if ((squares.array() < 0.0).any()) {
        cmd.saturated = true;
        squares = Eigen::Vector4d::Constant(std::max(total, 0.0));
        for (int axis = 0; axis < 3; ++axis) {
            const Eigen::Vector4d d = signs.col(axis) * demand[axis];
            squares += feasible_scale(squares, d) * d;
        }
    }
    for (int i = 0; i < 4; ++i) cmd.omega[i] = speed_from_square(squares[i] / 4.0, p.omega_max, cmd.saturated);
    double coax_force = std::max(F - p.b * total, 0.0);
    if (coax_force <= 1e-9 * std::max(F, 1.0)) coax_force = 0.0;
    cmd.omega_u = speed_from_square(coax_force / p.k_bar_u, p.omega_max, cmd.saturated);
    cmd.omega_l = p.k_uv * cmd.omega_u;
}

}  // namespace

AllocationParams AllocationParams::from(const AircraftParams& aircraft, double K, double k_uv, double omega_max) {
    AllocationParams p;
    p.K = K;
    p.b = aircraft.quad.b;
    p.k = aircraft.quad.k;
    p.k_f = aircraft.quad.k_f;
    p.l_3 = aircraft.quad.l_3;
    p.delta_a = aircraft.quad.delta_a;
    p.k_bar_u = aircraft.coax_geometry().k_bar_u();
    p.k_uv = k_uv;
    p.omega_max = omega_max;
    return p;
}

double AllocationParams::roll_lever() const { return k + std::numbers::sqrt2 * l_3 * k_f / 2.0; }

Vec3 attitude_controller(const Quat& q, const BodyRates& omega, const Quat& q_d, const BodyRates& omega_d,
                         const Vec3& omega_d_dot, const Vec3& tau_d_hat, const Vec3& aux_torques, const Vec3& J,
                         const AttitudeGains& gains, double e0_min) {
    const Quat err = quat_error(q, q_d);
    if (err.q0 < e0_min) throw NearSingularAttitudeError("attitude error too close to 180 deg");

    const Vec3 omega_tilde = omega - omega_d;
    const Mat3 m_q = skew(err.q) + err.q0 * Mat3::Identity();
    const Vec3 e_dot = 0.5 * m_q * omega_tilde;
    const double e0_dot = -0.5 * err.q.dot(omega_tilde);
    const Mat3 m_q_dot = skew(e_dot) + e0_dot * Mat3::Identity();
    const Mat3 m_q_inv = m_q.inverse();

    auto jmul = [&J](const Vec3& x) -> Vec3 { return J.cwiseProduct(x); };
    return omega.cross(jmul(omega)) - aux_torques - tau_d_hat + jmul(omega_d_dot) -
           2.0 * jmul(m_q_inv * (gains.k_a1 * err.q + gains.k_a2 * e_dot)) - jmul(m_q_inv * m_q_dot * omega_tilde);
}

Vec3 position_controller(const Vec3& p, const Vec3& v, const Vec3& p_d, const Vec3& v_d, const Vec3& a_d,
                         const Vec3& F_hat_body, const Vec3& F_w, const Vec3& F_f, const Mat3& R,
                         const InertiaParams& inertia, const PositionGains& gains) {
    const Vec3 e1 = p - p_d;
    const Vec3 e2 = v - v_d;
    const double m = inertia.m;
    const Vec3 base = -R * F_hat_body - R * (F_w + F_f) + m * inertia.g * Vec3::UnitZ() + m * a_d;
    if (std::isinf(gains.max_approach_speed) && std::isinf(gains.max_feedback_accel)) {
        return base - gains.k_p1 * m * e1 - gains.k_p2 * m * e2;
    }
    auto bound = [](const Vec3& x, double limit) -> Vec3 {
        const double n = x.norm();
        return n > limit ? Vec3(x * (limit / n)) : x;
    };
    const Vec3 approach = bound(gains.k_p1 / gains.k_p2 * e1, gains.max_approach_speed);
    return base + m * bound(-gains.k_p2 * (e2 + approach), gains.max_feedback_accel);
}

ActuatorCommand allocate_transition(double F_p_norm, const Vec3& tau_r, const AllocationParams& p) {
    ActuatorCommand cmd;
    cmd.mode = FlightMode::transition;
    cmd.delta_a = p.delta_a;
    const Vec3 demand(tau_r.x() / p.roll_lever(), 2.0 * tau_r.y() / (p.b * p.l_3), 2.0 * tau_r.z() / (p.b * p.l_3));
    // rows: sign of roll, pitch, yaw for rotors 1..4
    static const Mat43 signs = (Mat43() << 1, 1, -1, -1, 1, 1, 1, -1, 1, -1, -1, -1).finished();
    spin_rotors(F_p_norm, demand, signs, p, cmd);
    return cmd;
}

ActuatorCommand allocate_forward(double F_p_norm, double tau_r2, double tau_r3, const AllocationParams& p) {
    ActuatorCommand cmd;
    cmd.mode = FlightMode::forward;
    cmd.delta_a = 0.0;
    const Vec3 demand(0.0, 2.0 * tau_r2 / (p.b * p.l_3), 2.0 * tau_r3 / (p.b * p.l_3));
    static const Mat43 signs = (Mat43() << 0, 1, -1, 0, 1, 1, 0, -1, 1, 0, -1, -1).finished();
    spin_rotors(F_p_norm, demand, signs, p, cmd);
    return cmd;
}

AllocatedEffort allocation_forward_model(const ActuatorCommand& cmd, const AllocationParams& p) {
    QuadRotorParams quad;
    quad.b = p.b;
    quad.k = p.k;
    quad.k_f = p.k_f;
    quad.l_3 = p.l_3;
    const Wrench w = quad_rotor_wrench(cmd.omega, quad, cmd.mode);
    return {p.k_bar_u * cmd.omega_u * cmd.omega_u + w.force.x(), w.torque};
}

AileronCommand aileron_law(double tau_r1, double alpha, const Vec3& v_body, const WingParams& wing, double rho,
                           double q_min, double delta_max) {
    const double pressure = rho * (v_body.x() * v_body.x() + v_body.z() * v_body.z());
    if (!(pressure > q_min)) throw LowAirspeedError("dynamic pressure below aileron threshold");
    if (!(std::abs(alpha) < std::numbers::pi / 2.0 - 0.1)) throw DomainError("angle of attack too large for ailerons");
    const double delta = tau_r1 / (wing.l_w * wing.C_Ldelta * wing.S * pressure * std::cos(alpha));
    AileronCommand out;
    out.delta_12 = std::clamp(delta, -delta_max, delta_max);
    out.saturated = out.delta_12 != delta;
    return out;
}

}  // namespace tailsitter
