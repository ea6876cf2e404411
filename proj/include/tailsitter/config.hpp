#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tailsitter/control.hpp"
#include "tailsitter/dynamics.hpp"
#include "tailsitter/observer.hpp"
#include "tailsitter/trajectory.hpp"

namespace tailsitter {

enum class ScenarioMode { hover_to_level, level_to_hover, custom };

/// How the rotor force magnitude is taken from F_p.
enum class ThrustMagnitude {
    norm,        // |F_p|
    projection,  // max(F_p . body x, 0)
};

/// How the commanded attitude is formed.
enum class ThrustDirection {
    force,       // pitch toward the attitude that points the available force along F_p
    trajectory,  // pitch from the reference schedule only
};

/// s * sin(w_s t) + c * cos(w_c t)
struct HarmonicChannel {
    double sin_amp = 0.0;
    double sin_freq = 0.0;
    double cos_amp = 0.0;
    double cos_freq = 0.0;

    double value(double t) const;
    double rate_bound() const;
};

struct DisturbanceSpec {
    bool enabled = true;
    std::array<HarmonicChannel, 3> force;
    std::array<HarmonicChannel, 3> torque;
    double noise_velocity = 0.0;  // uniform half-width on measured velocity (m/s)
    double noise_rate = 0.0;      // uniform half-width on measured body rate (rad/s)

    static DisturbanceSpec scenario();
    Disturbance build() const;
    /// Derivative bounds in observer channel units: translational channels use the norm of the force
    /// bounds divided by mass (the body-to-inertial rotation mixes components), rate channels use
    /// torque bound over inertia.
    std::array<double, 6> rate_bounds(const InertiaParams& inertia) const;
};

struct InitialCondition {
    std::optional<Vec3> p;
    std::optional<Vec3> v;
    std::optional<double> theta_deg;
    double phi_deg = 0.0;
    double psi_deg = 0.0;
    Vec3 omega = Vec3::Zero();
    bool published_speeds = false;  // start from the published rotor speeds instead of the allocator
};

struct ControlSettings {
    AttitudeGains attitude;
    PositionGains position{0.2, 0.6, 12.0, 6.0};
    double K = 6.0;
    double K_forward = 0.0;     // thrust split in forward mode: quads carry cruise thrust
    double K_blend_time = 4.0;  // s, ramp from K to K_forward after the mode switch
    double k_uv = 0.4376;
    double omega_max = 1200.0;
    double delta_max = 0.35;
    double q_min = 50.0;
    double e0_min = kDefaultE0Min;
    double forward_gamma_deg = 10.0;
    ThrustDirection direction = ThrustDirection::force;
    ThrustMagnitude magnitude = ThrustMagnitude::projection;
    double max_pitch_correction_deg = 45.0;
    double command_bandwidth = 20.0;  // rad/s, shaping filter on the force-derived pitch command
    double alpha_limit_deg = 90.0;    // angle-of-attack window for the pitch command at speed
    double alpha_limit_speed = 20.0;  // m/s, airspeed at which the window is fully closed
};

struct ScenarioConfig {
    ScenarioMode mode = ScenarioMode::hover_to_level;
    double duration = 30.0;
    double physics_dt = 0.001;
    double control_dt = 0.002;
    std::uint64_t seed = 1;
    std::string output = "run_output";
    double settle_time = 2.0;  // start of the observer-accuracy window (s)

    AircraftParams aircraft;
    std::string wing_preset = "baseline";
    ObserverGains observer_gains = ObserverGains::scenario_default();
    ObserverScheme observer_scheme = ObserverScheme::explicit_euler;
    ControlSettings control;
    TransitionParams trajectory;  // k_m is taken from the mode-specific keys below
    double k_m_h2l = 0.05;
    double k_m_l2h = 0.005;
    DisturbanceSpec disturbance = DisturbanceSpec::scenario();
    InitialCondition initial;

    TransitionParams transition_params() const;
    TransitionKind transition_kind() const;
    State initial_state() const;
};

/// Parse flat "section.key = value" text; '#' starts a comment.
ScenarioConfig parse_config(std::string_view text);
ScenarioConfig load_config(const std::string& path);

/// Throws ValidationError naming the first offending key.
void validate(const ScenarioConfig& cfg);

/// All recognized keys, in documentation order.
std::vector<std::string> config_keys();

}  // namespace tailsitter
