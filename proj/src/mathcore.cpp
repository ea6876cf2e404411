#include "tailsitter/mathcore.hpp"

#include <cmath>
#include <numbers>

#include "tailsitter/errors.hpp"

namespace tailsitter {

namespace {

void require_away_from_lock(double theta) {
    if (std::abs(theta) > std::numbers::pi / 2.0 - kGimbalMargin) {
        throw GimbalLock("pitch within gimbal-lock margin of +-90 deg");
    }
}

}  // namespace

double Quat::norm() const { return std::sqrt(q0 * q0 + q.squaredNorm()); }

Quat Quat::normalized() const {
    const double n = norm();
    return {q0 / n, q / n};
}

Quat operator*(const Quat& a, const Quat& b) {
    return {a.q0 * b.q0 - a.q.dot(b.q), a.q0 * b.q + b.q0 * a.q + a.q.cross(b.q)};
}

Mat3 euler_to_rotmat(const EulerAngles& a) {
    const double cf = std::cos(a.phi), sf = std::sin(a.phi);
    const double ct = std::cos(a.theta), st = std::sin(a.theta);
    const double cp = std::cos(a.psi), sp = std::sin(a.psi);
    Mat3 r;
    r << ct * cp, cp * st * sf - sp * cf, cp * st * cf + sp * sf,
         ct * sp, sp * st * sf + cp * cf, sp * st * cf - cp * sf,
         -st,     sf * ct,                cf * ct;
    return r;
}

Mat3 quat_to_rotmat(const Quat& quat) {
    const double w = quat.q0, x = quat.q.x(), y = quat.q.y(), z = quat.q.z();
    Mat3 r;
    r << 1 - 2 * (y * y + z * z), 2 * (x * y - w * z),     2 * (x * z + w * y),
         2 * (x * y + w * z),     1 - 2 * (x * x + z * z), 2 * (y * z - w * x),
         2 * (x * z - w * y),     2 * (y * z + w * x),     1 - 2 * (x * x + y * y);
    return r;
}

Mat3 skew(const Vec3& v) {
    Mat3 s;
    s << 0.0, -v.z(), v.y(),
         v.z(), 0.0, -v.x(),
         -v.y(), v.x(), 0.0;
    return s;
}

Quat euler_to_quat(const EulerAngles& a) {
    const double cf = std::cos(a.phi / 2), sf = std::sin(a.phi / 2);
    const double ct = std::cos(a.theta / 2), st = std::sin(a.theta / 2);
    const double cp = std::cos(a.psi / 2), sp = std::sin(a.psi / 2);
    return {cf * ct * cp + sf * st * sp,
            Vec3(sf * ct * cp - cf * st * sp,
                 cf * st * cp + sf * ct * sp,
                 cf * ct * sp - sf * st * cp)};
}

EulerAngles quat_to_euler(const Quat& quat) {
    const double w = quat.q0, x = quat.q.x(), y = quat.q.y(), z = quat.q.z();
    const double s = 2.0 * (w * y - z * x);
    if (std::abs(s) >= std::cos(kGimbalMargin)) {
        throw GimbalLock("pitch within gimbal-lock margin of +-90 deg");
    }
    EulerAngles a;
    a.theta = std::asin(s);
    a.phi = std::atan2(2.0 * (w * x + y * z), 1.0 - 2.0 * (x * x + y * y));
    a.psi = std::atan2(2.0 * (w * z + x * y), 1.0 - 2.0 * (y * y + z * z));
    return a;
}

QuatRate quat_derivative(const Quat& q, const BodyRates& omega) {
    return {-0.5 * q.q.dot(omega), 0.5 * (skew(q.q) + q.q0 * Mat3::Identity()) * omega};
}

BodyRates angular_velocity_from_quat_rates(const Quat& q, const Vec3& q_dot, double q0_dot) {
    return 2.0 * (q.q0 * q_dot - q0_dot * q.q - q.q.cross(q_dot));
}

Mat3 euler_rate_matrix(const EulerAngles& a) {
    const double cf = std::cos(a.phi), sf = std::sin(a.phi);
    const double ct = std::cos(a.theta), st = std::sin(a.theta);
    Mat3 z;
    z << 1.0, 0.0, -st,
         0.0, cf, sf * ct,
         0.0, -sf, cf * ct;
    return z;
}

Mat3 euler_rate_matrix_inverse(const EulerAngles& a) {
    require_away_from_lock(a.theta);
    const double cf = std::cos(a.phi), sf = std::sin(a.phi);
    const double tt = std::tan(a.theta), sec = 1.0 / std::cos(a.theta);
    Mat3 zi;
    zi << 1.0, sf * tt, cf * tt,
          0.0, cf, -sf,
          0.0, sf * sec, cf * sec;
    return zi;
}

Vec3 body_to_euler_rates(const BodyRates& omega, const EulerAngles& angles) {
    return euler_rate_matrix_inverse(angles) * omega;
}

BodyRates euler_to_body_rates(const Vec3& euler_rates, const EulerAngles& angles) {
    require_away_from_lock(angles.theta);
    return euler_rate_matrix(angles) * euler_rates;
}

Quat quat_error(const Quat& q, const Quat& q_d) {
    Quat e{q.q0 * q_d.q0 + q.q.dot(q_d.q), q_d.q0 * q.q - q.q0 * q_d.q + q.q.cross(q_d.q)};
    if (e.q0 < 0.0) {
        e.q0 = -e.q0;
        e.q = -e.q;
    }
    return e;
}

}  // namespace tailsitter
