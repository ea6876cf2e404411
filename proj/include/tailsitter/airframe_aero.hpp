#pragma once

#include "tailsitter/mathcore.hpp"
#include "tailsitter/wrench.hpp"

namespace tailsitter {

struct WingParams {
    double S = 0.45;  // half-wing area (m^2)
    double C_L0 = 0.32;
    double C_Lalpha = 0.5;
    double C_Ldelta = 0.05;
    double C_D0 = 0.008;
    double A_w = 6.0;
    double l_w = 1.0;  // spanwise arm of the half-wing force (m)
    double l_c = 0.0;  // chordwise arm of the total lift about the CG (m)

    double e_w() const;  // Oswald factor

    static WingParams nominal();
    static WingParams fitted();
};

struct FuselageParams {
    double S_f = 0.04;
    double C_lf_alpha = 0.0802;
    double C_df0 = 0.0063;
    double C_df_alpha = 0.0094;
};

struct FlowAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
    double V_b = 0.0;
    bool alpha_held = false;
};

/// In-plane speed below which alpha keeps its previous value.
inline constexpr double kLowSpeedGuard = 0.1;

/// gamma from inertial velocity, alpha = theta - gamma, beta from body velocity.
FlowAngles flow_angles(double theta, const Vec3& v_inertial, const Vec3& v_body, double previous_alpha = 0.0);

struct WingForces {
    double L1 = 0.0, L2 = 0.0, D1 = 0.0, D2 = 0.0;
};

WingForces wing_forces(double alpha, const Vec3& v_body, double delta1, double delta2, const WingParams& p,
                       double rho);

Wrench wing_wrench(const WingForces& f, double alpha, const WingParams& p);

Wrench fuselage_wrench(double alpha, const Vec3& v_body, const FuselageParams& p, double rho);

}  // namespace tailsitter
