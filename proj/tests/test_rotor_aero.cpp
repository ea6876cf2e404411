#include <cmath>
#include <limits>

#include "doctest.h"
#include "support.hpp"
#include "tailsitter/errors.hpp"
#include "tailsitter/rotor_aero.hpp"

using namespace tailsitter;

namespace {

// Independent restatement of the two balance residuals for the grid-search oracle.
struct Balance {
    double rho_a, v_u, axial, edge;

    double m_u() const { return rho_a * std::hypot(edge, axial + v_u); }
    double m_l(double v_l) const {
        return 0.5 * rho_a * std::hypot(axial + 2 * v_u + v_l, edge) + 0.5 * rho_a * std::hypot(axial + v_l, edge);
    }
    double residual(double v_l, double w_l) const {
        const double p_u = 2 * m_u() * v_u * (axial + v_u);
        const double f_l = m_l(v_l) * w_l - 2 * m_u() * v_u;
        const double p_l = f_l * (axial + v_u + v_l);
        const double ke = 0.5 * m_l(v_l) * ((axial + w_l) * (axial + w_l) - axial * axial) -
                          0.5 * m_u() * ((axial + 2 * v_u) * (axial + 2 * v_u) - axial * axial);
        return std::abs(p_l - p_u) / p_u + std::abs(ke - p_u) / p_u;
    }
};

}  // namespace

TEST_CASE("hover ratio") {
    const double r = solve_hover_ratio();
    CHECK(r == doctest::Approx(0.4376).epsilon(1e-3 / 0.4376));
    CHECK(std::abs(((2 * r + 5) * r + 2) * r - 2) < 1e-10);

    double lo = 0.0, hi = 1.0;
    auto f = [](double x) { return 2 * x * x * x + 5 * x * x + 2 * x - 2; };
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) > 0 ? hi : lo) = mid;
    }
    CHECK(std::abs(0.5 * (lo + hi) - r) < 1e-10);
}

TEST_CASE("coax flow at hover reproduces the published constants") {
    const CoaxGeometry geom;
    const CoaxFlowState s = solve_coax_induced_flow(1.0, 0.0, 0.0, geom);
    CHECK(s.v_l == doctest::Approx(0.4376).epsilon(1e-3 / 0.4376));
    CHECK(s.w_l == doctest::Approx(2.3590).epsilon(1e-3 / 2.3590));
    CHECK(s.w_u == 2.0 * s.v_u);
    const double rho_a = geom.rho * geom.area();
    CHECK(s.F_cl == doctest::Approx(1.3913 * rho_a).epsilon(1e-3));
}

TEST_CASE("coax flow matches a brute-force grid search off hover") {
    const CoaxGeometry geom;
    const double alpha = 0.1, V_b = 2.0, v_u = 1.0;
    const CoaxFlowState s = solve_coax_induced_flow(v_u, alpha, V_b, geom);
    const Balance bal{geom.rho * geom.area(), v_u, V_b * std::cos(alpha), V_b * std::sin(alpha)};

    double c_v = 1.5, c_w = 3.0, half_v = 1.5, half_w = 3.0;
    for (int level = 0; level < 6; ++level) {
        double best = std::numeric_limits<double>::infinity(), bv = c_v, bw = c_w;
        const int n = 1000;
        for (int i = 0; i <= n; ++i) {
            const double vl = c_v - half_v + 2 * half_v * i / n;
            if (vl <= 0) continue;
            for (int j = 0; j <= n; ++j) {
                const double wl = c_w - half_w + 2 * half_w * j / n;
                if (wl <= 0) continue;
                const double r = bal.residual(vl, wl);
                if (r < best) best = r, bv = vl, bw = wl;
            }
        }
        c_v = bv, c_w = bw;
        half_v *= 0.02, half_w *= 0.02;
    }
    CHECK(std::abs(s.v_l - c_v) < 1e-4);
    CHECK(std::abs(s.w_l - c_w) < 1e-4);
}

TEST_CASE("equal-power invariant across the envelope") {
    const CoaxGeometry geom;
    testgen::Gen g(21);
    for (int i = 0; i < 300; ++i) {
        const double v_u = g.uniform(0.5, 25.0);
        const double alpha = g.uniform(kCoaxAlphaMin, kCoaxAlphaMax);
        const double V_b = g.uniform(0.0, kCoaxSpeedMax);
        const CoaxFlowState s = solve_coax_induced_flow(v_u, alpha, V_b, geom);
        CHECK(std::abs(s.P_cu - s.P_cl) / s.P_cu < 1e-8);
        CHECK(s.v_l >= 0.0);
        CHECK(s.w_l >= 0.0);
        CHECK(s.w_u == 2.0 * s.v_u);
    }
}

TEST_CASE("hover-limit continuity") {
    const CoaxFlowState s = solve_coax_induced_flow(1.0, 1e-4, 1e-4, CoaxGeometry{});
    CHECK(std::abs(s.v_l - solve_hover_ratio()) < 1e-3);
    CHECK(std::abs(s.w_l - 2.3590) < 1e-3);
}

TEST_CASE("envelope and domain guards") {
    const CoaxGeometry geom;
    CHECK_THROWS_AS(solve_coax_induced_flow(1.0, 1.7, 1.0, geom), NoConvergence);
    CHECK_THROWS_AS(solve_coax_induced_flow(1.0, -0.6, 1.0, geom), NoConvergence);
    CHECK_THROWS_AS(solve_coax_induced_flow(1.0, 0.0, 81.0, geom), NoConvergence);
    CHECK_THROWS_AS(solve_coax_induced_flow(0.0, 0.0, 0.0, geom), DomainError);
    CHECK_THROWS_AS(coax_thrust_truth(-1.0, 0.0, 0.0, geom), DomainError);
}

TEST_CASE("truth thrust examples") {
    const CoaxGeometry geom;
    CHECK(coax_thrust_truth(0.0, 0.0, 0.0, geom).F_c == 0.0);
    CHECK(coax_thrust_truth(1e-9, 0.3, 40.0, geom).F_c == 0.0);
    CHECK(coax_thrust_nominal(0.0, geom) == 0.0);
    CHECK(coax_thrust_nominal(1.0, geom) == geom.k_bar_u());
    for (double w : {50.0, 100.0, 150.0, 300.0}) {
        const double nominal = coax_thrust_nominal(w, geom);
        CHECK(std::abs(coax_thrust_truth(w, 0.0, 0.0, geom).F_c - nominal) < 1e-6 * nominal);
    }
}

TEST_CASE("truth thrust increases with rotor speed") {
    const CoaxGeometry geom;
    testgen::Gen g(22);
    for (int i = 0; i < 40; ++i) {
        const double alpha = g.uniform(kCoaxAlphaMin, kCoaxAlphaMax);
        const double V_b = g.uniform(0.0, 60.0);
        double prev = 0.0;
        for (double w = 10.0; w <= 400.0; w += 10.0) {
            const double f = coax_thrust_truth(w, alpha, V_b, geom).F_c;
            CHECK(f > prev);
            prev = f;
        }
    }
}

TEST_CASE("geometry invariants") {
    const CoaxGeometry geom;
    CHECK(geom.area() == doctest::Approx(std::numbers::pi * (0.25 - 0.0064)));
    CHECK(geom.k_bar_u() > 0.0);
    CHECK(QuadRotorParams{}.roll_lever() > 0.0);
    // hover thrust at 300 rad/s exceeds the weight of the reference airframe
    CHECK(coax_thrust_nominal(300.0, geom) > 500.0);
}

TEST_CASE("induced power factors") {
    CHECK(induced_power_factor_coax() == doctest::Approx(1.2809).epsilon(1e-3 / 1.2809));
    const double limit = 2.0 / 1.5614;
    CHECK(std::abs(induced_power_factor_total(1e-6, 1.0) - limit) < 1e-3);
    const double direct = (2.0 + 2 * 4.4164 * std::pow(0.5, 1.5)) / (1.5614 + 2 * 4.4164 * std::pow(0.5, 1.5));
    CHECK(induced_power_factor_total(0.5, 1.0) == doctest::Approx(direct));
    for (int i = 0; i < 20; ++i) {
        for (int j = 0; j < 20; ++j) {
            const double zeta = 0.01 + 0.98 * i / 19.0;
            const double eta = 0.1 * std::pow(100.0, j / 19.0);
            CHECK(induced_power_factor_total(zeta, eta) < 1.2809);
        }
    }
    CHECK_THROWS_AS(induced_power_factor_total(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(induced_power_factor_total(0.5, 0.0), DomainError);
}

TEST_CASE("quad-rotor wrench") {
    const QuadRotorParams p;
    const Wrench zero = quad_rotor_wrench({0, 0, 0, 0}, p, FlightMode::transition);
    CHECK(zero.force.norm() == 0.0);
    CHECK(zero.torque.norm() == 0.0);

    const Wrench equal = quad_rotor_wrench({100, 100, 100, 100}, p, FlightMode::transition);
    CHECK(equal.torque.norm() == 0.0);
    CHECK(equal.force.x() == doctest::Approx(4 * p.b * 1e4));

    const Wrench w = quad_rotor_wrench({2, 1, 1, 2}, p, FlightMode::transition);
    CHECK(std::abs(w.torque.y()) < 1e-18);
    CHECK(w.torque.z() == doctest::Approx(-1.2e-3));

    const Wrench roll = quad_rotor_wrench({2, 1, 1, 2}, p, FlightMode::forward);
    CHECK(roll.torque.x() == doctest::Approx(p.k * (4 - 1 + 1 - 4)));
}

TEST_CASE("gyroscopic torque") {
    CHECK(gyroscopic_torque(Vec3::Zero(), {10, 20, 30, 40}, 0.01).norm() == 0.0);
    CHECK(gyroscopic_torque(Vec3(1, 2, 3), {50, 50, 50, 50}, 0.01).norm() == 0.0);

    const double w = 120.0;
    const Vec3 tau = gyroscopic_torque(Vec3(1, 0, 0), {w, 0, 0, 0}, 0.01);
    // e_x x e_z = -e_y, times (-1)^1
    CHECK(tau.x() == 0.0);
    CHECK(tau.y() == doctest::Approx(0.01 * w));
    CHECK(tau.z() == 0.0);
}
