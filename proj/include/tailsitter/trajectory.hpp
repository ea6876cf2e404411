#pragma once

#include <vector>

#include "tailsitter/mathcore.hpp"

namespace tailsitter {

enum class TransitionKind { hover_to_level, level_to_hover };

struct TransitionParams {
    double a = 5.0;
    double v_0 = 0.0;
    double v_f = 50.0;
    double h_0 = 30.0;
    double k_m = 0.05;
    double alpha_d0 = 5.0 * 3.14159265358979323846 / 180.0;
    double gamma_s = 80.0 * 3.14159265358979323846 / 180.0;
    double blend_time = 0.2;  // cosine blend of the alpha_d switch (s)

    static TransitionParams hover_to_level_defaults();
    static TransitionParams level_to_hover_defaults();

    /// End of the longitudinal acceleration segment.
    double t_m(TransitionKind kind) const;
};

struct TrajectoryPoint {
    double t = 0.0;
    double x_d = 0.0, z_d = 0.0, y_d = 0.0;
    double xdot_d = 0.0, zdot_d = 0.0;
    double xddot_d = 0.0, zddot_d = 0.0;
    double xdddot_d = 0.0, zdddot_d = 0.0;
    double alpha_d = 0.0, alphadot_d = 0.0, alphaddot_d = 0.0;
    double gamma_d = 0.0;
    double theta_d = 0.0;
};

struct DesiredAttitude {
    double alpha_d = 0.0;
    double gamma_d = 0.0;
    double theta_d = 0.0;
    Quat q_d;
    BodyRates omega_d = BodyRates::Zero();
    Vec3 omega_d_dot = Vec3::Zero();
    bool gamma_held = false;
};

/// Below this speed on both axes the flight-path angle keeps its hover value.
inline constexpr double kPathSpeedFloor = 1e-6;

/// Path and attitude reference for one transition; switch times of the alpha schedule are cached.
class TransitionReference {
public:
    TransitionReference(TransitionKind kind, const TransitionParams& params);

    TrajectoryPoint point(double t) const;
    DesiredAttitude attitude(double t) const;

    TransitionKind kind() const { return kind_; }
    const TransitionParams& params() const { return params_; }
    const std::vector<double>& switch_times() const { return switches_; }

private:
    TrajectoryPoint path(double t) const;
    bool cruise_regime(double t) const;

    TransitionKind kind_;
    TransitionParams params_;
    bool initial_cruise_ = false;
    std::vector<double> switches_;
};

TrajectoryPoint hover_to_level(double t, const TransitionParams& p);
TrajectoryPoint level_to_hover(double t, const TransitionParams& p);

/// gamma_d from the path velocity (held at held_gamma when the path is at rest), theta_d = alpha_d + gamma_d,
/// and the body-rate feedforward of the pure pitch motion.
DesiredAttitude desired_attitude(const TrajectoryPoint& point, const TransitionParams& p,
                                 double held_gamma = 1.5707963267948966);

}  // namespace tailsitter
