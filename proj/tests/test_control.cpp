#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "support.hpp"
#include "tailsitter/control.hpp"
#include "tailsitter/errors.hpp"

using namespace tailsitter;
using testgen::kPi;

namespace {

AllocationParams alloc_params(double K = 6.0) {
    return AllocationParams::from(AircraftParams{}, K, 0.4376, 1200.0);
}

struct AttitudeRig {
    Vec3 J{0.2, 0.3, 0.4};
    AttitudeGains gains;
    Quat q_d = Quat::identity();

    Vec3 omega_dot(const Quat& q, const Vec3& w) const {
        const Vec3 tau = attitude_controller(q, w, q_d, Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), J,
                                             gains);
        return (tau - w.cross(J.cwiseProduct(w))).cwiseQuotient(J);
    }

    // error-energy 1/2 k_a1 |e|^2 + 1/2 |e_dot|^2
    double energy(const Quat& q, const Vec3& w) const {
        const Quat e = quat_error(q, q_d);
        const Vec3 e_dot = 0.5 * (skew(e.q) + e.q0 * Mat3::Identity()) * w;
        return 0.5 * gains.k_a1 * e.q.squaredNorm() + 0.5 * e_dot.squaredNorm();
    }

    void rk4(Quat& q, Vec3& w, double h) const {
        auto f = [&](const Quat& qq, const Vec3& ww) {
            const QuatRate r = quat_derivative(qq, ww);
            return std::pair{r, omega_dot(qq, ww)};
        };
        auto add = [](const Quat& qq, const QuatRate& r, double s) {
            return Quat{qq.q0 + s * r.q0_dot, qq.q + s * r.q_dot};
        };
        const auto [r1, a1] = f(q, w);
        const auto [r2, a2] = f(add(q, r1, h / 2), w + h / 2 * a1);
        const auto [r3, a3] = f(add(q, r2, h / 2), w + h / 2 * a2);
        const auto [r4, a4] = f(add(q, r3, h), w + h * a3);
        q = Quat{q.q0 + h / 6 * (r1.q0_dot + 2 * r2.q0_dot + 2 * r3.q0_dot + r4.q0_dot),
                 q.q + h / 6 * (r1.q_dot + 2 * r2.q_dot + 2 * r3.q_dot + r4.q_dot)}
                .normalized();
        w += h / 6 * (a1 + 2 * a2 + 2 * a3 + a4);
    }
};

Quat axis_angle(const Vec3& axis, double angle) {
    return {std::cos(angle / 2), std::sin(angle / 2) * axis.normalized()};
}

}  // namespace

TEST_CASE("attitude controller equilibrium") {
    testgen::Gen g(61);
    const Quat q = g.unit_quat();
    const Vec3 tau = attitude_controller(q, Vec3::Zero(), q, Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero(),
                                         Vec3(0.2, 0.2, 0.4), AttitudeGains{});
    CHECK(tau.norm() < 1e-15);
}

TEST_CASE("attitude controller singularity guard") {
    const Quat q = axis_angle(Vec3::UnitX(), kPi - 0.01);
    CHECK_THROWS_AS(attitude_controller(q, Vec3::Zero(), Quat::identity(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero(),
                                        Vec3::Zero(), Vec3(0.2, 0.2, 0.4), AttitudeGains{}),
                    NearSingularAttitudeError);
}

TEST_CASE("closed-loop linearization has the designed poles") {
    AttitudeRig rig;
    rig.q_d = axis_angle(Vec3(0.3, 1, 0.2), 0.9);
    auto f = [&](const Eigen::Matrix<double, 6, 1>& x) {
        const Vec3 e = x.head<3>();
        const Quat err{std::sqrt(1.0 - e.squaredNorm()), e};
        const Quat q = rig.q_d * err;
        const Vec3 w = x.tail<3>();
        Eigen::Matrix<double, 6, 1> out;
        out.head<3>() = 0.5 * (skew(e) + err.q0 * Mat3::Identity()) * w;
        out.tail<3>() = rig.omega_dot(q, w);
        return out;
    };
    Eigen::Matrix<double, 6, 6> A;
    const double h = 1e-6;
    for (int j = 0; j < 6; ++j) {
        Eigen::Matrix<double, 6, 1> dx = Eigen::Matrix<double, 6, 1>::Zero();
        dx[j] = h;
        A.col(j) = (f(dx) - f(-dx)) / (2 * h);
    }
    const auto eig = A.eigenvalues();
    const std::complex<double> disc = std::sqrt(std::complex<double>(
        rig.gains.k_a2 * rig.gains.k_a2 - 4 * rig.gains.k_a1, 0.0));
    const std::complex<double> r1 = (-rig.gains.k_a2 + disc) / 2.0, r2 = (-rig.gains.k_a2 - disc) / 2.0;
    for (int i = 0; i < 6; ++i) {
        const double d = std::min(std::abs(eig[i] - r1), std::abs(eig[i] - r2));
        CHECK(d < 1e-6);
    }
}

TEST_CASE("error energy decreases monotonically for step errors up to sixty degrees") {
    AttitudeRig rig;
    testgen::Gen g(62);
    for (int trial = 0; trial < 12; ++trial) {
        Quat q = axis_angle(g.vec(-1, 1), g.uniform(0.1, kPi / 3));
        Vec3 w = Vec3::Zero();
        double prev = rig.energy(q, w);
        bool monotone = true;
        for (int i = 0; i < 5000; ++i) {
            rig.rk4(q, w, 2e-3);
            const double v = rig.energy(q, w);
            if (v > prev * (1 + 1e-9) + 1e-15) monotone = false;
            prev = v;
        }
        CHECK(monotone);
    }
}

TEST_CASE("attitude error vanishes in the disturbance-free loop") {
    SUBCASE("scenario gains, sixty degree step") {
        AttitudeRig rig;
        rig.gains = {16.0, 8.0};
        Quat q = axis_angle(Vec3(1, -1, 0.5), kPi / 3);
        Vec3 w = Vec3::Zero();
        for (int i = 0; i < 10000; ++i) rig.rk4(q, w, 2e-3);
        CHECK(quat_error(q, rig.q_d).q.norm() < 1e-3);
        CHECK(w.norm() < 1e-3);
    }
    SUBCASE("baseline gains, ten degree step") {
        AttitudeRig rig;
        Quat q = axis_angle(Vec3(0.2, 1, -0.4), 10 * kPi / 180);
        Vec3 w = Vec3::Zero();
        for (int i = 0; i < 10000; ++i) rig.rk4(q, w, 2e-3);
        CHECK(quat_error(q, rig.q_d).q.norm() < 1e-3);
    }
}

TEST_CASE("position controller examples") {
    const InertiaParams in;
    const PositionGains gains;
    const Vec3 hover = position_controller(Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero(),
                                           Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Mat3::Identity(), in, gains);
    CHECK((hover - Vec3(0, 0, 500)).norm() < 1e-12);

    const Vec3 off = position_controller(Vec3(1, 0, 0), Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero(),
                                         Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Mat3::Identity(), in, gains);
    CHECK((off - Vec3(-gains.k_p1 * in.m, 0, 500)).norm() < 1e-12);
}

TEST_CASE("position error dynamics with exact disturbance feed") {
    const InertiaParams in;
    const PositionGains gains;
    testgen::Gen g(63);
    for (int i = 0; i < 500; ++i) {
        const Vec3 p = g.vec(-5, 5), v = g.vec(-5, 5), p_d = g.vec(-5, 5), v_d = g.vec(-5, 5), a_d = g.vec(-2, 2);
        const Vec3 F_d = g.vec(-20, 20), F_w = g.vec(-50, 50), F_f = g.vec(-5, 5);
        const Mat3 R = quat_to_rotmat(g.unit_quat());
        const Vec3 F_p = position_controller(p, v, p_d, v_d, a_d, F_d, F_w, F_f, R, in, gains);
        const Vec3 accel = (F_p + R * (F_d + F_w + F_f)) / in.m - in.g * Vec3::UnitZ();
        const Vec3 expected = a_d - gains.k_p1 * (p - p_d) - gains.k_p2 * (v - v_d);
        CHECK((accel - expected).norm() < 1e-11);
    }
}

TEST_CASE("position error vanishes in the disturbance-free loop") {
    const InertiaParams in;
    for (const PositionGains& gains : {PositionGains{0.5, 1.2}, PositionGains{0.2, 0.6}}) {
        Vec3 p = gains.k_p1 > 0.3 ? Vec3(1, -0.5, 0.8) : Vec3(0.1, 0.05, -0.08);
        Vec3 v = Vec3::Zero();
        const double dt = 1e-3;
        for (int i = 0; i < 20000; ++i) {
            const Vec3 F_p = position_controller(p, v, Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), Vec3::Zero(),
                                                 Vec3::Zero(), Vec3::Zero(), Mat3::Identity(), in, gains);
            const Vec3 a = F_p / in.m - in.g * Vec3::UnitZ();
            v += dt * a;
            p += dt * v;
        }
        CHECK(p.norm() < 1e-3);
        CHECK(v.norm() < 1e-3);
    }
}

TEST_CASE("bounded position feedback equals the linear law inside its bounds") {
    const InertiaParams in;
    const PositionGains linear{0.5, 1.2};
    const PositionGains bounded{0.5, 1.2, 12.0, 6.0};
    testgen::Gen g(64);
    int inside = 0;
    for (int i = 0; i < 2000; ++i) {
        const Vec3 e1 = g.vec(-30, 30), e2 = g.vec(-10, 10);
        const Mat3 R = quat_to_rotmat(g.unit_quat());
        const Vec3 F_d = g.vec(-20, 20);
        const Vec3 a = position_controller(e1, e2, Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), F_d, Vec3::Zero(),
                                           Vec3::Zero(), R, in, linear);
        const Vec3 b = position_controller(e1, e2, Vec3::Zero(), Vec3::Zero(), Vec3::Zero(), F_d, Vec3::Zero(),
                                           Vec3::Zero(), R, in, bounded);
        const Vec3 base = -R * F_d + in.m * in.g * Vec3::UnitZ();
        const bool within = (linear.k_p1 / linear.k_p2 * e1).norm() <= 12.0 &&
                            (linear.k_p1 * e1 + linear.k_p2 * e2).norm() <= 6.0;
        if (within) {
            ++inside;
            CHECK((a - b).norm() < 1e-9);
        }
        CHECK((b - base).norm() / in.m <= 6.0 + 1e-9);
    }
    CHECK(inside > 10);
}

TEST_CASE("transition allocation examples") {
    AllocationParams p = alloc_params();
    const ActuatorCommand unit = allocate_transition(4 * p.b * (1 + p.K), Vec3::Zero(), p);
    for (double w : unit.omega) CHECK(w == doctest::Approx(1.0).epsilon(1e-14));

    const ActuatorCommand hover = allocate_transition(500.0, Vec3::Zero(), p);
    for (double w : hover.omega) CHECK(w == doctest::Approx(188.98).epsilon(1e-4));
    CHECK(hover.omega_u == doctest::Approx(std::sqrt(500.0 * 6.0 / 7.0 / p.k_bar_u)).epsilon(1e-12));
    CHECK(hover.omega_l == doctest::Approx(0.4376 * hover.omega_u));
    CHECK_FALSE(hover.saturated);
    CHECK(hover.mode == FlightMode::transition);
}

TEST_CASE("forward allocation examples") {
    AllocationParams p = alloc_params();
    const ActuatorCommand c = allocate_forward(400.0, 0.0, 0.0, p);
    for (double w : c.omega) CHECK(w == doctest::Approx(std::sqrt(400.0 / (4 * p.b * (1 + p.K)))).epsilon(1e-14));
    CHECK(c.mode == FlightMode::forward);
}

TEST_CASE("allocation round trips") {
    testgen::Gen g(65);
    for (double K : {6.0, 2.0, 0.0}) {
        const AllocationParams p = alloc_params(K);
        int unsaturated = 0;
        for (int i = 0; i < 1000; ++i) {
            const double F = g.uniform(200, 900);
            const Vec3 tau(g.uniform(-0.5, 0.5), g.uniform(-5, 5), g.uniform(-5, 5));

            const ActuatorCommand t = allocate_transition(F, tau, p);
            const AllocatedEffort et = allocation_forward_model(t, p);
            if (!t.saturated) {
                ++unsaturated;
                CHECK(std::abs(et.thrust - F) / F < 1e-9);
                CHECK((et.torque - tau).norm() / tau.norm() < 1e-9);
                if (K > 0.0) {
                    double sq = 0.0;
                    for (double w : t.omega) sq += w * w;
                    CHECK(std::abs(p.k_bar_u * t.omega_u * t.omega_u / (p.b * sq) - K) < 1e-9);
                } else {
                    CHECK(t.omega_u == 0.0);
                }
            }

            const ActuatorCommand f = allocate_forward(F, tau.y(), tau.z(), p);
            const AllocatedEffort ef = allocation_forward_model(f, p);
            if (!f.saturated) {
                CHECK(std::abs(ef.thrust - F) / F < 1e-9);
                CHECK(std::abs(ef.torque.y() - tau.y()) / std::abs(tau.y()) < 1e-9);
                CHECK(std::abs(ef.torque.z() - tau.z()) / std::abs(tau.z()) < 1e-9);
                const auto& w = f.omega;
                const double roll_sum = w[0] * w[0] - w[1] * w[1] + w[2] * w[2] - w[3] * w[3];
                const double scale = w[0] * w[0] + w[1] * w[1] + w[2] * w[2] + w[3] * w[3];
                CHECK(std::abs(roll_sum) <= 1e-12 * scale);
            }
        }
        CHECK(unsaturated > 900);
    }
}

TEST_CASE("infeasible demands saturate without leaving the speed range") {
    const AllocationParams p = alloc_params();
    testgen::Gen g(66);
    int flagged = 0;
    for (int i = 0; i < 1000; ++i) {
        const double F = g.uniform(0, 3000);
        const Vec3 tau = g.vec(-400, 400);
        for (const ActuatorCommand& c : {allocate_transition(F, tau, p), allocate_forward(F, tau.y(), tau.z(), p)}) {
            for (double w : c.omega) {
                CHECK(std::isfinite(w));
                CHECK(w >= 0.0);
                CHECK(w <= p.omega_max);
            }
            CHECK(c.omega_u >= 0.0);
            CHECK(c.omega_u <= p.omega_max);
            CHECK(c.omega_l == doctest::Approx(p.k_uv * c.omega_u));
            if (c.saturated) ++flagged;
        }
    }
    CHECK(flagged > 0);
    const ActuatorCommand neg = allocate_transition(0.0, Vec3(5, 0, 0), p);
    CHECK(neg.saturated);
}

TEST_CASE("aileron law") {
    const WingParams w;
    CHECK(aileron_law(0.0, 0.0, Vec3(50, 0, 0), w, 1.225).delta_12 == 0.0);

    const AileronCommand a = aileron_law(1.0, 0.0, Vec3(50, 0, 0), w, 1.225);
    CHECK_FALSE(a.saturated);
    const WingForces f = wing_forces(0.0, Vec3(50, 0, 0), -a.delta_12, a.delta_12, w, 1.225);
    CHECK(std::abs(wing_wrench(f, 0.0, w).torque.x() - 1.0) < 1e-12);

    const AileronCommand big = aileron_law(1e4, 0.0, Vec3(50, 0, 0), w, 1.225);
    CHECK(big.saturated);
    CHECK(big.delta_12 == 0.35);

    CHECK_THROWS_AS(aileron_law(1.0, 0.0, Vec3(2, 0, 0), w, 1.225), LowAirspeedError);
    CHECK_THROWS_AS(aileron_law(1.0, 1.5, Vec3(50, 0, 0), w, 1.225), DomainError);
}
