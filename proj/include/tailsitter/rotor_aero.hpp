#pragma once

#include <array>

#include "tailsitter/actuator.hpp"
#include "tailsitter/mathcore.hpp"
#include "tailsitter/wrench.hpp"

namespace tailsitter {

struct CoaxGeometry {
    double R_r = 0.5;        // blade radius (m)
    double l_a = 0.08;       // root cutout (m)
    double R_d = 0.5;        // disk radius used in v = lambda_c R_d omega (m)
    double lambda_c = 0.2673;
    double rho = 1.225;

    double area() const;     // pi (R_r^2 - l_a^2)
    double k_bar_u() const;  // hover_thrust_coefficient() rho A lambda_c^2 R_d^2
};

struct CoaxFlowState {
    double v_u = 0.0, v_l = 0.0;
    double w_u = 0.0, w_l = 0.0;
    double F_cu = 0.0, F_cl = 0.0;
    double P_cu = 0.0, P_cl = 0.0;
    int iterations = 0;
};

struct CoaxThrust {
    double F_c = 0.0;
    double omega_l = 0.0;
    CoaxFlowState flow;
};

/// Solver envelope on inflow angle (rad) and airspeed (m/s).
inline constexpr double kCoaxAlphaMin = -0.5;
inline constexpr double kCoaxAlphaMax = 1.6;
inline constexpr double kCoaxSpeedMax = 80.0;

/// Root of 2r^3 + 5r^2 + 2r - 2 = 0 in (0, 1): hover v_l / v_u.
double solve_hover_ratio();

/// Total hover thrust over rho A v_u^2: 2 from the upper rotor plus 2 / (1 + v_l/v_u) from the lower, about 3.3913.
double hover_thrust_coefficient();

/// Equal-power momentum solution for the lower rotor given the upper induced velocity.
/// Throws NoConvergence outside the envelope or when the iteration budget runs out.
CoaxFlowState solve_coax_induced_flow(double v_u, double alpha, double V_b, const CoaxGeometry& geom);

CoaxThrust coax_thrust_truth(double omega_u, double alpha, double V_b, const CoaxGeometry& geom);

/// k_bar_u * omega_u^2.
double coax_thrust_nominal(double omega_u, const CoaxGeometry& geom);

double induced_power_factor_coax();
double induced_power_factor_total(double zeta, double eta);

struct QuadRotorParams {
    double b = 5e-4;
    double k = 3e-5;
    double k_f = 2.6583;      // amplifier coefficient at the reference vane deflection
    double l_3 = 0.8;
    double J_r = 0.01;
    double delta_a = 0.13686;

    /// k + sqrt(2) l_3 k_f / 2, the transition-mode roll coefficient.
    double roll_lever() const;
    double roll_coefficient(FlightMode mode) const;
};

Wrench quad_rotor_wrench(const std::array<double, 4>& omegas, const QuadRotorParams& params, FlightMode mode);

/// sum_i J_r (Omega x e_z) (-1)^i omega_i
Vec3 gyroscopic_torque(const BodyRates& omega_body, const std::array<double, 4>& omegas, double J_r);

}  // namespace tailsitter
