#include "tailsitter/dynamics.hpp"

#include <algorithm>
#include <cmath>

#include "tailsitter/errors.hpp"

namespace tailsitter {

namespace {

const Quat kBellyDown{0.0, Vec3::UnitX()};

State advance(const State& s, const StateDerivative& d, double h) {
    State out;
    out.p = s.p + h * d.p_dot;
    out.v = s.v + h * d.v_dot;
    out.q = {s.q.q0 + h * d.q_rate.q0_dot, s.q.q + h * d.q_rate.q_dot};
    out.omega = s.omega + h * d.omega_dot;
    return out;
}

}  // namespace

CoaxGeometry AircraftParams::coax_geometry() const {
    CoaxGeometry g = coax;
    g.rho = rho;
    return g;
}

Disturbance Disturbance::none() { return {}; }

Quat flight_attitude(const EulerAngles& angles) { return kBellyDown * euler_to_quat(angles); }

EulerAngles flight_euler(const Quat& q) { return quat_to_euler(kBellyDown.conjugate() * q); }

double nose_elevation(const Quat& q) {
    const Mat3 r = quat_to_rotmat(q);
    return std::asin(std::clamp(r(2, 0), -1.0, 1.0));
}

double pitch_angle(const Quat& q) {
    const Mat3 r = quat_to_rotmat(q);
    return std::atan2(r(2, 0), r(0, 0));
}

RotorInflow rotor_inflow(const Vec3& v_body) {
    const double edge = std::hypot(v_body.y(), v_body.z());
    return {std::atan2(edge, v_body.x()), v_body.norm()};
}

PlantLoads total_wrench(const State& s, const ActuatorCommand& cmd, const Disturbance& dist, double t,
                        const AircraftParams& params) {
    const Mat3 r = quat_to_rotmat(s.q);
    const Vec3 v_body = r.transpose() * s.v;
    const FlowAngles flow = flow_angles(pitch_angle(s.q), s.v, v_body);

    PlantLoads out;
    out.alpha = flow.alpha;

    // Descent and reverse flow lie outside the momentum model; evaluate at edgewise flow instead.
    RotorInflow inflow = rotor_inflow(v_body);
    if (inflow.alpha > kPlantInflowAlphaMax) {
        inflow.alpha = kPlantInflowAlphaMax;
        out.coax_envelope_clamped = true;
    }
    if (inflow.V_b > kCoaxSpeedMax) {
        inflow.V_b = kCoaxSpeedMax;
        out.coax_envelope_clamped = true;
    }
    out.coax_thrust = coax_thrust_truth(cmd.omega_u, inflow.alpha, inflow.V_b, params.coax_geometry()).F_c;

    Wrench body = Wrench::zero(Frame::body);
    body.force.x() += out.coax_thrust;
    const Wrench quad = quad_rotor_wrench(cmd.omega, params.quad, cmd.mode);
    out.quad_thrust = quad.force.x();
    body += quad;
    const WingForces wf = wing_forces(flow.alpha, v_body, -cmd.delta_12, cmd.delta_12, params.wing, params.rho);
    body += wing_wrench(wf, flow.alpha, params.wing);
    body += fuselage_wrench(flow.alpha, v_body, params.fuselage, params.rho);
    body.torque += gyroscopic_torque(s.omega, cmd.omega, params.quad.J_r);
    body.force += dist.force_at(t);
    body.torque += dist.torque_at(t);

    out.body = body;
    out.force_inertial = r * body.force;
    out.torque_body = body.torque;
    return out;
}

StateDerivative state_derivative(const State& s, const PlantLoads& loads, const InertiaParams& inertia) {
    StateDerivative d;
    d.p_dot = s.v;
    d.v_dot = loads.force_inertial / inertia.m - inertia.g * Vec3::UnitZ();
    d.q_rate = quat_derivative(s.q, s.omega);
    const Vec3 j_omega = inertia.J.cwiseProduct(s.omega);
    d.omega_dot = (loads.torque_body - s.omega.cross(j_omega)).cwiseQuotient(inertia.J);
    return d;
}

State step(const State& s, const ActuatorCommand& cmd, const Disturbance& dist, double t, double dt,
           const AircraftParams& params) {
    if (!(dt > 0.0 && dt <= 0.02)) throw DomainError("integration step must lie in (0, 0.02] s");
    auto f = [&](const State& x, double tau) {
        return state_derivative(x, total_wrench(x, cmd, dist, tau, params), params.inertia);
    };
    const StateDerivative k1 = f(s, t);
    const StateDerivative k2 = f(advance(s, k1, dt / 2), t + dt / 2);
    const StateDerivative k3 = f(advance(s, k2, dt / 2), t + dt / 2);
    const StateDerivative k4 = f(advance(s, k3, dt), t + dt);

    State out;
    out.p = s.p + dt / 6 * (k1.p_dot + 2 * k2.p_dot + 2 * k3.p_dot + k4.p_dot);
    out.v = s.v + dt / 6 * (k1.v_dot + 2 * k2.v_dot + 2 * k3.v_dot + k4.v_dot);
    out.q.q0 = s.q.q0 + dt / 6 * (k1.q_rate.q0_dot + 2 * k2.q_rate.q0_dot + 2 * k3.q_rate.q0_dot + k4.q_rate.q0_dot);
    out.q.q = s.q.q + dt / 6 * (k1.q_rate.q_dot + 2 * k2.q_rate.q_dot + 2 * k3.q_rate.q_dot + k4.q_rate.q_dot);
    out.q = out.q.normalized();
    out.omega = s.omega + dt / 6 * (k1.omega_dot + 2 * k2.omega_dot + 2 * k3.omega_dot + k4.omega_dot);
    return out;
}

}  // namespace tailsitter
