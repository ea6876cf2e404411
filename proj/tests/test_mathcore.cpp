#include <cmath>

#include "doctest.h"
#include "support.hpp"
#include "tailsitter/errors.hpp"
#include "tailsitter/mathcore.hpp"

using namespace tailsitter;
using testgen::kPi;

namespace {

Mat3 rx(double a) {
    Mat3 m;
    m << 1, 0, 0, 0, std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a);
    return m;
}
Mat3 ry(double a) {
    Mat3 m;
    m << std::cos(a), 0, std::sin(a), 0, 1, 0, -std::sin(a), 0, std::cos(a);
    return m;
}
Mat3 rz(double a) {
    Mat3 m;
    m << std::cos(a), -std::sin(a), 0, std::sin(a), std::cos(a), 0, 0, 0, 1;
    return m;
}

// Quaternion product written out by components, independent of operator*.
Quat hamilton(const Quat& a, const Quat& b) {
    const double w = a.q0 * b.q0 - a.q.x() * b.q.x() - a.q.y() * b.q.y() - a.q.z() * b.q.z();
    const double x = a.q0 * b.q.x() + a.q.x() * b.q0 + a.q.y() * b.q.z() - a.q.z() * b.q.y();
    const double y = a.q0 * b.q.y() - a.q.x() * b.q.z() + a.q.y() * b.q0 + a.q.z() * b.q.x();
    const double z = a.q0 * b.q.z() + a.q.x() * b.q.y() - a.q.y() * b.q.x() + a.q.z() * b.q0;
    return {w, Vec3(x, y, z)};
}

}  // namespace

TEST_CASE("euler_to_rotmat examples") {
    CHECK(testgen::max_abs(euler_to_rotmat({0, 0, 0}) - Mat3::Identity()) == 0.0);
    const Mat3 r = euler_to_rotmat({0, kPi / 2, 0});
    CHECK(std::abs(r(0, 0)) < 1e-15);
    CHECK(r(2, 0) == doctest::Approx(-1.0));
}

TEST_CASE("euler_to_rotmat matches elementary rotation product and is orthonormal") {
    testgen::Gen g(11);
    for (int i = 0; i < 500; ++i) {
        const EulerAngles e = g.angles();
        const Mat3 r = euler_to_rotmat(e);
        CHECK(testgen::max_abs(r - rz(e.psi) * ry(e.theta) * rx(e.phi)) < 1e-12);
        CHECK(testgen::max_abs(r * r.transpose() - Mat3::Identity()) < 1e-12);
        CHECK(r.determinant() == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("skew matrix") {
    CHECK(testgen::max_abs(skew(Vec3::Zero())) == 0.0);
    const Vec3 out = skew(Vec3::UnitX()) * Vec3::UnitY();
    CHECK((out - Vec3::UnitZ()).norm() == 0.0);

    testgen::Gen g(12);
    for (int i = 0; i < 500; ++i) {
        const Vec3 v = g.vec(-10, 10), w = g.vec(-10, 10);
        const Vec3 cross(v.y() * w.z() - v.z() * w.y(), v.z() * w.x() - v.x() * w.z(), v.x() * w.y() - v.y() * w.x());
        CHECK((skew(v) * w - cross).lpNorm<Eigen::Infinity>() < 1e-13);
        const Mat3 s = skew(v);
        CHECK(testgen::max_abs(s + s.transpose()) == 0.0);
    }
}

TEST_CASE("euler_to_quat examples and rotation-matrix oracle") {
    const Quat id = euler_to_quat({0, 0, 0});
    CHECK(id.q0 == 1.0);
    CHECK(id.q.norm() == 0.0);

    const Quat p = euler_to_quat({0, kPi / 2, 0});
    CHECK(p.q0 == doctest::Approx(std::cos(kPi / 4)));
    CHECK(p.q.y() == doctest::Approx(std::sin(kPi / 4)));
    CHECK(std::abs(p.q.x()) < 1e-15);
    CHECK(std::abs(p.q.z()) < 1e-15);

    testgen::Gen g(13);
    for (int i = 0; i < 500; ++i) {
        const EulerAngles e = g.angles();
        const Quat q = euler_to_quat(e);
        CHECK(std::abs(q.norm() - 1.0) < 1e-12);
        CHECK(testgen::max_abs(quat_to_rotmat(q) - euler_to_rotmat(e)) < 1e-12);
    }
}

TEST_CASE("quat_to_euler round trip and gimbal guard") {
    const EulerAngles zero = quat_to_euler(Quat::identity());
    CHECK(zero.phi == 0.0);
    CHECK(zero.theta == 0.0);
    CHECK(zero.psi == 0.0);

    CHECK_THROWS_AS(quat_to_euler({std::cos(kPi / 4), Vec3(0, std::sin(kPi / 4), 0)}), GimbalLock);

    testgen::Gen g(14);
    for (int i = 0; i < 1000; ++i) {
        const EulerAngles e = g.angles();
        const EulerAngles back = quat_to_euler(euler_to_quat(e));
        CHECK(std::abs(back.phi - e.phi) < 1e-9);
        CHECK(std::abs(back.theta - e.theta) < 1e-9);
        CHECK(std::abs(back.psi - e.psi) < 1e-9);
        CHECK(std::abs(back.theta) < kPi / 2);
        CHECK(testgen::max_abs(euler_to_rotmat(back) - euler_to_rotmat(e)) < 1e-9);
    }
}

TEST_CASE("quaternion product matches component formula") {
    testgen::Gen g(15);
    for (int i = 0; i < 200; ++i) {
        const Quat a = g.unit_quat(), b = g.unit_quat();
        const Quat c = a * b, d = hamilton(a, b);
        CHECK(std::abs(c.q0 - d.q0) < 1e-15);
        CHECK((c.q - d.q).norm() < 1e-15);
        CHECK(testgen::max_abs(quat_to_rotmat(c) - quat_to_rotmat(a) * quat_to_rotmat(b)) < 1e-12);
    }
}

TEST_CASE("quat_derivative examples and norm preservation identity") {
    testgen::Gen g(16);
    const Quat any = g.unit_quat();
    const QuatRate still = quat_derivative(any, Vec3::Zero());
    CHECK(still.q0_dot == 0.0);
    CHECK(still.q_dot.norm() == 0.0);

    const QuatRate r = quat_derivative(Quat::identity(), Vec3(2, 0, 0));
    CHECK(r.q0_dot == 0.0);
    CHECK((r.q_dot - Vec3(1, 0, 0)).norm() == 0.0);

    for (int i = 0; i < 500; ++i) {
        const Quat q = g.unit_quat();
        const QuatRate d = quat_derivative(q, g.vec(-5, 5));
        CHECK(std::abs(q.q0 * d.q0_dot + q.q.dot(d.q_dot)) < 1e-15 * 10);
    }
}

TEST_CASE("angular velocity from quaternion rates") {
    CHECK(angular_velocity_from_quat_rates(Quat::identity(), Vec3::Zero(), 0.0).norm() == 0.0);
    const Vec3 w = angular_velocity_from_quat_rates(Quat::identity(), Vec3(0.5, 0, 0), 0.0);
    CHECK((w - Vec3(1, 0, 0)).norm() < 1e-15);

    testgen::Gen g(17);
    for (int i = 0; i < 500; ++i) {
        const Quat q = g.unit_quat();
        const Vec3 omega = g.vec(-5, 5);
        const QuatRate d = quat_derivative(q, omega);
        CHECK((angular_velocity_from_quat_rates(q, d.q_dot, d.q0_dot) - omega).norm() < 1e-12);
    }
}

TEST_CASE("Euler rate matrices") {
    const Vec3 rates = body_to_euler_rates(Vec3(0, 0, 1), {0.0, kPi / 4, 0.0});
    CHECK(rates.x() == doctest::Approx(std::tan(kPi / 4) * std::cos(0.0)));

    CHECK_THROWS_AS(euler_rate_matrix_inverse({0, kPi / 2, 0}), GimbalLock);

    testgen::Gen g(18);
    for (int i = 0; i < 500; ++i) {
        const EulerAngles e = g.angles(1e-3);
        CHECK(testgen::max_abs(euler_rate_matrix_inverse(e) * euler_rate_matrix(e) - Mat3::Identity()) < 1e-12);
        const Vec3 omega = g.vec(-3, 3);
        CHECK((euler_to_body_rates(body_to_euler_rates(omega, e), e) - omega).norm() < 1e-12 * 100);
    }
}

TEST_CASE("Euler rates agree with finite differences of the rotation matrix") {
    testgen::Gen g(19);
    for (int i = 0; i < 50; ++i) {
        const EulerAngles e = g.angles(0.2);
        const Vec3 ed = g.vec(-1, 1);
        const double h = 1e-6;
        const EulerAngles ep{e.phi + h * ed.x(), e.theta + h * ed.y(), e.psi + h * ed.z()};
        const EulerAngles em{e.phi - h * ed.x(), e.theta - h * ed.y(), e.psi - h * ed.z()};
        const Mat3 r = euler_to_rotmat(e);
        const Mat3 rdot = (euler_to_rotmat(ep) - euler_to_rotmat(em)) / (2 * h);
        const Mat3 s = r.transpose() * rdot;
        const Vec3 omega_fd(s(2, 1), s(0, 2), s(1, 0));
        CHECK((euler_to_body_rates(ed, e) - omega_fd).norm() < 1e-7);
    }
}

TEST_CASE("error quaternion") {
    testgen::Gen g(20);
    const Quat q = g.unit_quat();
    const Quat self = quat_error(q, q);
    CHECK(self.q0 == doctest::Approx(1.0));
    CHECK(self.q.norm() < 1e-15);

    const double gamma = 0.7;
    const Vec3 axis = Vec3(1, 2, -1).normalized();
    const Quat rot{std::cos(gamma / 2), std::sin(gamma / 2) * axis};
    const Quat e = quat_error(rot, Quat::identity());
    CHECK(e.q0 == doctest::Approx(rot.q0));
    CHECK((e.q - rot.q).norm() < 1e-15);

    for (int i = 0; i < 500; ++i) {
        const Quat a = g.unit_quat(), d = g.unit_quat();
        const Quat err = quat_error(a, d);
        CHECK(err.q0 >= 0.0);
        CHECK(std::abs(err.norm() - 1.0) < 1e-12);
        CHECK(testgen::max_abs(quat_to_rotmat(d * err) - quat_to_rotmat(a)) < 1e-9);
    }
}

TEST_CASE("RK4 kinematics keep unit norm over a million steps without renormalizing") {
    Quat q = Quat::identity();
    const Vec3 omega(0.3, -1.1, 2.0);
    const double dt = 1e-3;
    double worst = 0.0;
    for (int i = 0; i < 1'000'000; ++i) {
        const QuatRate k1 = quat_derivative(q, omega);
        const QuatRate k2 = quat_derivative(Quat{q.q0 + dt / 2 * k1.q0_dot, q.q + dt / 2 * k1.q_dot}, omega);
        const QuatRate k3 = quat_derivative(Quat{q.q0 + dt / 2 * k2.q0_dot, q.q + dt / 2 * k2.q_dot}, omega);
        const QuatRate k4 = quat_derivative(Quat{q.q0 + dt * k3.q0_dot, q.q + dt * k3.q_dot}, omega);
        q = Quat{q.q0 + dt / 6 * (k1.q0_dot + 2 * k2.q0_dot + 2 * k3.q0_dot + k4.q0_dot),
                 q.q + dt / 6 * (k1.q_dot + 2 * k2.q_dot + 2 * k3.q_dot + k4.q_dot)};
        worst = std::max(worst, std::abs(q.norm() - 1.0));
    }
    CHECK(worst < 1e-9);
    const double angle = omega.norm() * 1000.0;
    CHECK(std::abs(q.q0 - std::cos(angle / 2)) < 1e-9);
    CHECK((q.q - std::sin(angle / 2) * omega.normalized()).norm() < 1e-9);
}
