#include "tailsitter/airframe_aero.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tailsitter {

double WingParams::e_w() const { return 1.78 * (1.0 - 0.045 * std::pow(A_w, 0.68)) - 0.46; }

WingParams WingParams::nominal() { return {}; }

WingParams WingParams::fitted() {
    WingParams p;
    p.C_L0 = 0.3137;
    p.C_Lalpha = 0.7025;
    p.C_D0 = 0.00182;
    p.C_Ldelta = 0.1634;
    return p;
}

FlowAngles flow_angles(double theta, const Vec3& v_inertial, const Vec3& v_body, double previous_alpha) {
    FlowAngles f;
    f.V_b = v_body.norm();
    f.beta = f.V_b > 0.0 ? std::asin(std::clamp(v_body.y() / f.V_b, -1.0, 1.0)) : 0.0;
    if (std::hypot(v_inertial.x(), v_inertial.z()) > kLowSpeedGuard) {
        f.gamma = std::atan2(v_inertial.z(), v_inertial.x());
        f.alpha = theta - f.gamma;
        // keep alpha in (-pi, pi]; gamma absorbs the turn so theta = alpha + gamma still holds
        if (f.alpha > std::numbers::pi) {
            f.alpha -= 2.0 * std::numbers::pi;
            f.gamma = theta - f.alpha;
        } else if (f.alpha <= -std::numbers::pi) {
            f.alpha += 2.0 * std::numbers::pi;
            f.gamma = theta - f.alpha;
        }
    } else {
        f.alpha = previous_alpha;
        f.gamma = theta - f.alpha;
        f.alpha_held = true;
    }
    return f;
}

WingForces wing_forces(double alpha, const Vec3& v_body, double delta1, double delta2, const WingParams& p,
                       double rho) {
    const double q = 0.5 * p.S * rho * (v_body.x() * v_body.x() + v_body.z() * v_body.z());
    const double induced = std::numbers::pi * p.A_w * p.e_w();
    const double base = p.C_L0 + p.C_Lalpha * alpha;
    const double cl1 = base + p.C_Ldelta * delta1;
    const double cl2 = base + p.C_Ldelta * delta2;
    return {q * cl1, q * cl2, q * (p.C_D0 + cl1 * cl1 / induced), q * (p.C_D0 + cl2 * cl2 / induced)};
}

Wrench wing_wrench(const WingForces& f, double alpha, const WingParams& p) {
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    const double lift = f.L1 + f.L2, drag = f.D1 + f.D2;
    Wrench w = Wrench::zero(Frame::body);
    w.force = Vec3(lift * sa - drag * ca, 0.0, -lift * ca - drag * sa);
    w.torque = Vec3(p.l_w * ((f.L2 - f.L1) * ca + (f.D2 - f.D1) * sa),
                    p.l_c * (lift * ca + drag * sa),
                    p.l_w * ((f.D2 - f.D1) * ca + (f.L1 - f.L2) * sa));
    return w;
}

Wrench fuselage_wrench(double alpha, const Vec3& v_body, const FuselageParams& p, double rho) {
    const double q = 0.5 * p.S_f * rho * (v_body.x() * v_body.x() + v_body.z() * v_body.z());
    const double lift = q * p.C_lf_alpha * alpha;
    const double drag = q * (p.C_df0 + p.C_df_alpha * alpha);
    const double ca = std::cos(alpha), sa = std::sin(alpha);
    Wrench w = Wrench::zero(Frame::body);
    w.force = Vec3(lift * sa - drag * ca, 0.0, -lift * ca - drag * sa);
    return w;
}

}  // namespace tailsitter
