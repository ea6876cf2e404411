#include "tailsitter/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "tailsitter/errors.hpp"

namespace tailsitter {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;
constexpr double kHalfPi = std::numbers::pi / 2.0;

struct Reference {
    Vec3 p_d = Vec3::Zero();
    Vec3 v_d = Vec3::Zero();
    Vec3 a_d = Vec3::Zero();
    DesiredAttitude att;
};

Reference reference_at(const std::optional<TransitionReference>& ref, const Vec3& hold, double t) {
    Reference r;
    if (!ref) {
        r.p_d = hold;
        r.att.gamma_d = kHalfPi;
        r.att.theta_d = kHalfPi;
        r.att.q_d = flight_attitude({0.0, kHalfPi, 0.0});
        r.att.gamma_held = true;
        return r;
    }
    const TrajectoryPoint pt = ref->point(t);
    r.p_d = Vec3(pt.x_d, pt.y_d, pt.z_d);
    r.v_d = Vec3(pt.xdot_d, 0.0, pt.zdot_d);
    r.a_d = Vec3(pt.xddot_d, 0.0, pt.zddot_d);
    r.att = ref->attitude(t);
    return r;
}

// Published rotor speeds for the cruise and hover start conditions.
ActuatorCommand published_command(bool cruise, const ScenarioConfig& cfg) {
    ActuatorCommand cmd;
    cmd.omega_u = cruise ? 102.0 : 290.0;
    cmd.omega_l = cfg.control.k_uv * cmd.omega_u;
    cmd.omega.fill(cruise ? 74.4 : 310.1);
    cmd.delta_a = cfg.aircraft.quad.delta_a;
    return cmd;
}

Vec6 truth_acceleration(const State& x, const ActuatorCommand& cmd, const Disturbance& dist, double t,
                        const AircraftParams& ap) {
    const StateDerivative d = state_derivative(x, total_wrench(x, cmd, dist, t, ap), ap.inertia);
    Vec6 out;
    out.head<3>() = d.v_dot;
    out.tail<3>() = d.omega_dot;
    return out;
}

bool finite_state(const State& s) {
    return s.p.allFinite() && s.v.allFinite() && s.omega.allFinite() && std::isfinite(s.q.q0) && s.q.q.allFinite();
}

double rms(double sum_sq, std::size_t n) { return n ? std::sqrt(sum_sq / static_cast<double>(n)) : 0.0; }

}  // namespace

RunLog run_scenario(const ScenarioConfig& cfg) {
    const AircraftParams& ap = cfg.aircraft;
    const TransitionKind kind = cfg.transition_kind();
    const TransitionParams tp = cfg.transition_params();
    std::optional<TransitionReference> ref;
    if (cfg.mode != ScenarioMode::custom) ref.emplace(kind, tp);

    RunLog log;
    log.t_m = ref ? tp.t_m(kind) : 0.0;

    const Disturbance dist = cfg.disturbance.build();
    const AllocationParams alloc = AllocationParams::from(ap, cfg.control.K, cfg.control.k_uv, cfg.control.omega_max);
    AllocationParams alloc_forward = alloc;
    const double K_forward = cfg.control.K_forward;
    ObserverBank bank(cfg.observer_gains, cfg.observer_scheme);
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);

    State x = cfg.initial_state();
    const Vec3 hold = x.p;
    const long n_sub = std::lround(cfg.control_dt / cfg.physics_dt);
    const long n_steps = std::lround(cfg.duration / cfg.control_dt);
    log.records.reserve(static_cast<std::size_t>(n_steps));

    const double mass = ap.inertia.m;
    const double max_correction = cfg.control.max_pitch_correction_deg * kDeg;
    const double alpha_limit = cfg.control.alpha_limit_deg * kDeg;
    const double alpha_limit_speed = cfg.control.alpha_limit_speed;
    const bool explicit_scheme = cfg.observer_scheme == ObserverScheme::explicit_euler;

    ActuatorCommand cmd;
    Vec6 prev_meas = Vec6::Zero();
    Vec6 prev_xi = Vec6::Zero();
    double prev_alpha = 0.0;
    bool forward = false;
    // critically damped shaping of the force-derived pitch command
    const double w_f = cfg.control.command_bandwidth;
    double shaped = pitch_angle(x.q);
    double shaped_rate = 0.0;
    double tilt = 0.0;
    double tilt_rate = 0.0;

    for (long k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * cfg.control_dt;

        State y = x;
        if (cfg.disturbance.noise_velocity > 0.0)
            for (int i = 0; i < 3; ++i) y.v[i] += cfg.disturbance.noise_velocity * unit(rng);
        if (cfg.disturbance.noise_rate > 0.0)
            for (int i = 0; i < 3; ++i) y.omega[i] += cfg.disturbance.noise_rate * unit(rng);
        const Vec6 meas = observer_measurement(y);

        if (k == 0) {
            bank.reset(meas);
        } else {
            bank.step(explicit_scheme ? prev_meas : meas, prev_xi, cfg.control_dt, t);
        }
        const DisturbanceEstimate est = estimate_disturbances(bank, y, ap);
        const Reference r = reference_at(ref, hold, t);

        const Mat3 R = quat_to_rotmat(y.q);
        const Vec3 v_body = R.transpose() * y.v;
        const double pitch = pitch_angle(y.q);
        const FlowAngles flow = flow_angles(pitch, y.v, v_body, prev_alpha);
        prev_alpha = flow.alpha;
        const double delta_held = forward ? cmd.delta_12 : 0.0;
        const WingForces wf = wing_forces(flow.alpha, v_body, -delta_held, delta_held, ap.wing, ap.rho);
        const Wrench wing = wing_wrench(wf, flow.alpha, ap.wing);
        const Wrench fuselage = fuselage_wrench(flow.alpha, v_body, ap.fuselage, ap.rho);

        const Vec3 F_p = position_controller(y.p, y.v, r.p_d, r.v_d, r.a_d, est.force_body, wing.force,
                                             fuselage.force, R, ap.inertia, cfg.control.position);

        double theta_cmd = r.att.theta_d;
        Quat q_cmd = r.att.q_d;
        BodyRates omega_cmd = r.att.omega_d;
        Vec3 omega_dot_cmd = r.att.omega_d_dot;
        if (cfg.control.direction == ThrustDirection::force) {
            const Vec3 b_x(std::cos(pitch), 0.0, std::sin(pitch));
            const Vec3 n(-std::sin(pitch), 0.0, std::cos(pitch));
            const double thrust = std::max(F_p.dot(b_x), 0.2 * mass * ap.inertia.g);
            const double lift_slope =
                ap.wing.C_Lalpha * ap.wing.S * ap.rho * (v_body.x() * v_body.x() + v_body.z() * v_body.z());
            double target = pitch + std::clamp(F_p.dot(n) / (thrust + lift_slope), -max_correction, max_correction);
            if (!flow.alpha_held) {
                const double airspeed_sq = v_body.x() * v_body.x() + v_body.z() * v_body.z();
                const double closed = std::min(airspeed_sq / (alpha_limit_speed * alpha_limit_speed), 1.0);
                const double window = closed * alpha_limit + (1.0 - closed) * std::numbers::pi;
                target = std::clamp(target, flow.gamma - window, flow.gamma + window);
            }
            const double accel = w_f * w_f * (target - shaped) - 2.0 * w_f * shaped_rate;

            // lateral: tilt the commanded frame about the body axis normal to the required force
            const Quat q_pitch = flight_attitude({0.0, shaped, 0.0});
            const Vec3 F_c = quat_to_rotmat(q_pitch).transpose() * (F_p + R * (wing.force + fuselage.force));
            const double in_plane = std::hypot(F_c.x(), F_c.z());
            const Vec3 axis = in_plane > 1e-9 ? Vec3(Vec3(-F_c.z(), 0.0, F_c.x()) / in_plane) : Vec3(Vec3::UnitX());
            const double tilt_target = std::clamp(std::atan2(F_c.y(), in_plane), -max_correction, max_correction);
            const double tilt_accel = w_f * w_f * (tilt_target - tilt) - 2.0 * w_f * tilt_rate;

            if (k > 0) {
                shaped_rate += cfg.control_dt * accel;
                shaped += cfg.control_dt * shaped_rate;
                tilt_rate += cfg.control_dt * tilt_accel;
                tilt += cfg.control_dt * tilt_rate;
            }
            const Quat q_tilt{std::cos(0.5 * tilt), std::sin(0.5 * tilt) * axis};
            const Mat3 R_tilt_t = quat_to_rotmat(q_tilt).transpose();
            theta_cmd = shaped;
            q_cmd = flight_attitude({0.0, shaped, 0.0}) * q_tilt;
            omega_cmd = R_tilt_t * Vec3(0.0, shaped_rate, 0.0) + tilt_rate * axis;
            omega_dot_cmd = R_tilt_t * Vec3(0.0, w_f * w_f * (target - shaped) - 2.0 * w_f * shaped_rate, 0.0) +
                            (w_f * w_f * (tilt_target - tilt) - 2.0 * w_f * tilt_rate) * axis;
        }

        if (!forward && ref && kind == TransitionKind::hover_to_level &&
            r.att.gamma_d < cfg.control.forward_gamma_deg * kDeg &&
            ap.rho * (y.v.x() * y.v.x() + y.v.z() * y.v.z()) > cfg.control.q_min) {
            forward = true;
            log.forward_switch_time = t;
        }

        Vec3 aux = gyroscopic_torque(y.omega, cmd.omega, ap.quad.J_r);
        if (!forward) aux += wing.torque;

        Vec3 tau_r;
        try {
            tau_r = attitude_controller(y.q, y.omega, q_cmd, omega_cmd, omega_dot_cmd, est.torque_body, aux,
                                        ap.inertia.J, cfg.control.attitude, cfg.control.e0_min);
        } catch (const NearSingularAttitudeError& e) {
            log.aborted = true;
            log.abort_reason = std::string("t=") + std::to_string(t) + ": " + e.what();
            break;
        }

        const Vec3 b_x = R.col(0);
        const double thrust_cmd =
            cfg.control.magnitude == ThrustMagnitude::norm ? F_p.norm() : std::max(F_p.dot(b_x), 0.0);
        ActuatorCommand next;
        bool fallback = false;
        if (forward) {
            try {
                const AileronCommand ail = aileron_law(tau_r.x(), flow.alpha, v_body, ap.wing, ap.rho,
                                                       cfg.control.q_min, cfg.control.delta_max);
                const double since = t - *log.forward_switch_time;
                const double blend =
                    cfg.control.K_blend_time > 0.0 ? std::min(since / cfg.control.K_blend_time, 1.0) : 1.0;
                // quadratic in K so the coax speed, and with fast inflow its thrust, winds down linearly
                alloc_forward.K = K_forward + (1.0 - blend) * (1.0 - blend) * (cfg.control.K - K_forward);
                next = allocate_forward(thrust_cmd, tau_r.y(), tau_r.z(), alloc_forward);
                next.delta_12 = ail.delta_12;
                next.saturated = next.saturated || ail.saturated;
            } catch (const LowAirspeedError&) {
                fallback = true;
            } catch (const DomainError&) {
                fallback = true;
            }
        }
        if (!forward || fallback) next = allocate_transition(thrust_cmd, tau_r, alloc);
        if (k == 0 && cfg.initial.published_speeds) next = published_command(kind == TransitionKind::level_to_hover, cfg);

        RunRecord rec;
        rec.t = t;
        rec.state = x;
        rec.p_d = r.p_d;
        rec.v_d = r.v_d;
        rec.a_d = r.a_d;
        rec.F_p = F_p;
        rec.thrust_cmd = thrust_cmd;
        rec.tau_r = tau_r;
        rec.alpha_d = r.att.alpha_d;
        rec.gamma_d = r.att.gamma_d;
        rec.theta_d = r.att.theta_d;
        rec.theta_cmd = theta_cmd;
        rec.pitch = pitch_angle(x.q);
        rec.d_hat = bank.disturbance_hat();
        rec.aileron_fallback = fallback;

        try {
            const ActuatorCommand& seen = k == 0 ? next : cmd;
            rec.d_true = truth_acceleration(x, seen, dist, t, ap) - known_dynamics(x, seen, ap);
            cmd = next;
            const PlantLoads loads = total_wrench(x, cmd, dist, t, ap);
            rec.rotor_thrust = loads.coax_thrust + loads.quad_thrust;
            rec.coax_clamped = loads.coax_envelope_clamped;
            rec.cmd = cmd;
            log.records.push_back(rec);

            prev_meas = meas;
            prev_xi = known_dynamics(y, cmd, ap);
            for (long j = 0; j < n_sub; ++j) {
                x = step(x, cmd, dist, t + static_cast<double>(j) * cfg.physics_dt, cfg.physics_dt, ap);
            }
        } catch (const NoConvergence& e) {
            log.aborted = true;
            log.abort_reason = std::string("t=") + std::to_string(t) + ": plant solver: " + e.what();
            break;
        } catch (const DomainError& e) {
            log.aborted = true;
            log.abort_reason = std::string("t=") + std::to_string(t) + ": " + e.what();
            break;
        }
        if (!finite_state(x)) {
            log.aborted = true;
            log.abort_reason = "t=" + std::to_string(t) + ": non-finite state";
            break;
        }
    }
    return log;
}

RunSummary summarize(const RunLog& log, const ScenarioConfig& cfg) {
    RunSummary s;
    s.records = log.records.size();
    s.aborted = log.aborted;
    s.abort_reason = log.abort_reason;
    s.t_m = log.t_m;
    s.forward_switch_time = log.forward_switch_time;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    s.hover_mean_thrust = nan;
    s.forward_mean_thrust = nan;
    if (log.records.empty()) return s;

    const RunRecord& last = log.records.back();
    s.duration = last.t + cfg.control_dt;
    s.final_x = last.state.p.x();
    s.final_z = last.state.p.z();
    s.final_vx = last.state.v.x();
    s.final_speed = last.state.v.norm();
    s.final_pitch_deg = last.pitch / kDeg;
    s.final_z_error = last.state.p.z() - last.p_d.z();

    double hover_sum = 0.0, forward_sum = 0.0, pos_sq = 0.0;
    std::size_t pos_n = 0, est_n = 0;
    std::array<double, 6> err_sq{}, true_sq{};
    for (const RunRecord& r : log.records) {
        if (r.cmd.saturated) ++s.saturated_steps;
        if (r.coax_clamped) ++s.coax_clamped_steps;
        if (r.aileron_fallback) ++s.aileron_fallback_steps;

        if (cfg.mode != ScenarioMode::custom && r.t >= log.t_m) {
            const double e = (r.state.p - r.p_d).norm();
            s.max_position_error_after_tm = std::max(s.max_position_error_after_tm, e);
            s.max_pitch_error_after_tm_deg = std::max(s.max_pitch_error_after_tm_deg, std::abs(r.pitch - r.theta_d) / kDeg);
            pos_sq += e * e;
            ++pos_n;
        }
        if (r.state.v.norm() < 1.0 && r.pitch > 80.0 * kDeg && r.a_d.norm() < 0.5) {
            hover_sum += r.rotor_thrust;
            ++s.hover_samples;
        }
        if (r.cmd.mode == FlightMode::forward && r.t >= log.t_m) {
            forward_sum += r.rotor_thrust;
            ++s.forward_samples;
        }
        if (r.t >= cfg.settle_time) {
            for (int i = 0; i < 6; ++i) {
                const double e = r.d_hat[i] - r.d_true[i];
                err_sq[i] += e * e;
                true_sq[i] += r.d_true[i] * r.d_true[i];
            }
            ++est_n;
        }
    }
    s.rms_position_error_after_tm = rms(pos_sq, pos_n);
    if (s.hover_samples) s.hover_mean_thrust = hover_sum / static_cast<double>(s.hover_samples);
    if (s.forward_samples) s.forward_mean_thrust = forward_sum / static_cast<double>(s.forward_samples);
    for (int i = 0; i < 6; ++i) {
        s.estimate_rms_error[i] = rms(err_sq[i], est_n);
        s.disturbance_rms[i] = rms(true_sq[i], est_n);
        s.estimate_error_ratio[i] = s.disturbance_rms[i] > 0.0 ? s.estimate_rms_error[i] / s.disturbance_rms[i] : nan;
    }
    return s;
}

}  // namespace tailsitter
