#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tailsitter/config.hpp"

namespace tailsitter {

/// One control step. Command, estimate and truth disturbance refer to the same instant t.
struct RunRecord {
    double t = 0.0;
    State state;
    Vec3 p_d = Vec3::Zero();
    Vec3 v_d = Vec3::Zero();
    double alpha_d = 0.0;
    double gamma_d = 0.0;
    double theta_d = 0.0;
    double theta_cmd = 0.0;
    ActuatorCommand cmd;
    Vec6 d_hat = Vec6::Zero();
    Vec6 d_true = Vec6::Zero();  // truth lumped disturbance under the command in force just before t
    double pitch = 0.0;          // nose elevation (rad)
    double rotor_thrust = 0.0;   // truth coax plus quad-rotor thrust under cmd (N)
    Vec3 a_d = Vec3::Zero();
    Vec3 F_p = Vec3::Zero();    // position-loop force demand, inertial
    double thrust_cmd = 0.0;    // magnitude passed to allocation (N)
    Vec3 tau_r = Vec3::Zero();
    bool coax_clamped = false;
    bool aileron_fallback = false;
};

struct RunLog {
    std::vector<RunRecord> records;
    double t_m = 0.0;
    std::optional<double> forward_switch_time;
    bool aborted = false;
    std::string abort_reason;
};

/// Deterministic closed loop; the config must already be validated.
/// A solver failure or a non-finite state stops the run and is reported in the log.
RunLog run_scenario(const ScenarioConfig& cfg);

/// Figures of merit derived from a completed log.
struct RunSummary {
    std::size_t records = 0;
    double duration = 0.0;
    bool aborted = false;
    std::string abort_reason;
    double t_m = 0.0;
    double final_x = 0.0;
    double final_z = 0.0;
    double final_vx = 0.0;
    double final_speed = 0.0;
    double final_pitch_deg = 0.0;
    double final_z_error = 0.0;
    double max_position_error_after_tm = 0.0;
    double max_pitch_error_after_tm_deg = 0.0;
    double rms_position_error_after_tm = 0.0;
    double hover_mean_thrust = 0.0;  // NaN when the run has no hover phase
    std::size_t hover_samples = 0;
    double forward_mean_thrust = 0.0;
    std::size_t forward_samples = 0;
    std::optional<double> forward_switch_time;
    std::array<double, 6> estimate_rms_error{};
    std::array<double, 6> disturbance_rms{};
    std::array<double, 6> estimate_error_ratio{};
    std::size_t saturated_steps = 0;
    std::size_t coax_clamped_steps = 0;
    std::size_t aileron_fallback_steps = 0;
};

RunSummary summarize(const RunLog& log, const ScenarioConfig& cfg);

}  // namespace tailsitter
