#pragma once

#include <limits>

#include "tailsitter/actuator.hpp"
#include "tailsitter/airframe_aero.hpp"
#include "tailsitter/dynamics.hpp"
#include "tailsitter/mathcore.hpp"
#include "tailsitter/rotor_aero.hpp"

namespace tailsitter {

struct AttitudeGains {
    double k_a1 = 0.8;
    double k_a2 = 0.5;
};

struct PositionGains {
    double k_p1 = 0.2;
    double k_p2 = 0.6;
    // Optional bounds on the feedback part. Infinite values give the plain linear law.
    double max_approach_speed = std::numeric_limits<double>::infinity();
    double max_feedback_accel = std::numeric_limits<double>::infinity();
};

struct AllocationParams {
    double K = 6.0;
    double b = 5e-4;
    double k = 3e-5;
    double k_f = 2.6583;
    double l_3 = 0.8;
    double delta_a = 0.13686;
    double k_bar_u = 0.0;
    double k_uv = 0.4376;
    double omega_max = 1200.0;

    static AllocationParams from(const AircraftParams& aircraft, double K, double k_uv, double omega_max);
    double roll_lever() const;
};

inline constexpr double kDefaultE0Min = 0.05;

/// Quaternion tracking law. aux_torques are the modeled torques to cancel (wing and gyroscopic).
/// Throws NearSingularAttitudeError when the error scalar part drops below e0_min.
Vec3 attitude_controller(const Quat& q, const BodyRates& omega, const Quat& q_d, const BodyRates& omega_d,
                         const Vec3& omega_d_dot, const Vec3& tau_d_hat, const Vec3& aux_torques, const Vec3& J,
                         const AttitudeGains& gains, double e0_min = kDefaultE0Min);

/// Desired total rotor force in the inertial frame. F_hat_body, F_w and F_f are body-frame forces.
/// With finite bounds the feedback is nested: the position error sets a bounded approach velocity and the
/// velocity error a bounded acceleration. Inside the bounds this equals the linear law.
Vec3 position_controller(const Vec3& p, const Vec3& v, const Vec3& p_d, const Vec3& v_d, const Vec3& a_d,
                         const Vec3& F_hat_body, const Vec3& F_w, const Vec3& F_f, const Mat3& R,
                         const InertiaParams& inertia, const PositionGains& gains);

/// Quad-rotor speeds for total force and three torques, with vanes deployed.
ActuatorCommand allocate_transition(double F_p_norm, const Vec3& tau_r, const AllocationParams& params);

/// Quad-rotor speeds for pitch and yaw only; the reactive roll sum is zero by construction.
ActuatorCommand allocate_forward(double F_p_norm, double tau_r2, double tau_r3, const AllocationParams& params);

struct AllocatedEffort {
    double thrust = 0.0;  // k_bar_u omega_u^2 + b sum omega_i^2
    Vec3 torque = Vec3::Zero();
};

/// Nominal force and torque produced by a command; the inverse of the allocators.
AllocatedEffort allocation_forward_model(const ActuatorCommand& cmd, const AllocationParams& params);

struct AileronCommand {
    double delta_12 = 0.0;
    bool saturated = false;
};

/// delta = tau_r1 / (l_w C_Ldelta S rho (u^2 + w^2) cos alpha), clamped to +-delta_max.
/// Throws LowAirspeedError when rho (u^2 + w^2) <= q_min.
AileronCommand aileron_law(double tau_r1, double alpha, const Vec3& v_body, const WingParams& wing, double rho,
                           double q_min = 50.0, double delta_max = 0.35);

}  // namespace tailsitter
