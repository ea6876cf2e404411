#pragma once

#include <Eigen/Dense>

namespace tailsitter {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using BodyRates = Eigen::Vector3d;  // (p, q, r) in rad/s

struct EulerAngles {
    double phi = 0.0;    // roll
    double theta = 0.0;  // pitch
    double psi = 0.0;    // yaw
};

/// Hamilton quaternion, scalar first. Rotates body vectors into the parent frame.
struct Quat {
    double q0 = 1.0;
    Vec3 q = Vec3::Zero();

    static Quat identity() { return {}; }
    double norm() const;
    Quat normalized() const;
    Quat conjugate() const { return {q0, -q}; }
};

struct QuatRate {
    double q0_dot = 0.0;
    Vec3 q_dot = Vec3::Zero();
};

Quat operator*(const Quat& a, const Quat& b);

/// ZYX rotation matrix R = Rz(psi) Ry(theta) Rx(phi).
Mat3 euler_to_rotmat(const EulerAngles& angles);

Mat3 quat_to_rotmat(const Quat& q);

/// S(v) with S(v) w = v x w.
Mat3 skew(const Vec3& v);

Quat euler_to_quat(const EulerAngles& angles);

/// Throws GimbalLock when |theta| is within 1e-6 rad of pi/2.
EulerAngles quat_to_euler(const Quat& q);

/// q0_dot = -1/2 q.Omega,  q_dot = 1/2 (S(q) + q0 I) Omega.
QuatRate quat_derivative(const Quat& q, const BodyRates& omega);

/// Inverse of quat_derivative: Omega = 2 (q0 q_dot - q0_dot q - q x q_dot).
BodyRates angular_velocity_from_quat_rates(const Quat& q, const Vec3& q_dot, double q0_dot);

/// Z with Omega = Z * (phi_dot, theta_dot, psi_dot).
Mat3 euler_rate_matrix(const EulerAngles& angles);

/// Z^-1; throws GimbalLock near |theta| = pi/2.
Mat3 euler_rate_matrix_inverse(const EulerAngles& angles);

Vec3 body_to_euler_rates(const BodyRates& omega, const EulerAngles& angles);
BodyRates euler_to_body_rates(const Vec3& euler_rates, const EulerAngles& angles);

/// Error quaternion q_d^* (x) q, sign-flipped so that e0 >= 0.
Quat quat_error(const Quat& q, const Quat& q_d);

/// Margin from pi/2 inside which Euler conversions refuse to operate.
inline constexpr double kGimbalMargin = 1e-6;

}  // namespace tailsitter
