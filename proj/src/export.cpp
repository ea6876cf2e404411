#include "tailsitter/export.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <sstream>

#include "tailsitter/errors.hpp"
#include "tailsitter/observer.hpp"
#include "tailsitter/rotor_aero.hpp"

namespace tailsitter {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

void row(std::ostream& out, std::initializer_list<double> values) {
    bool first = true;
    for (double v : values) {
        if (!first) out << ',';
        out << v;
        first = false;
    }
    out << '\n';
}

}  // namespace

std::vector<std::string> run_csv_columns() {
    return {"t",        "x",        "y",        "z",        "vx",         "vy",         "vz",        "q0",
            "q1",       "q2",       "q3",       "p",        "q",          "r",          "x_d",       "y_d",
            "z_d",      "vx_d",     "vz_d",     "alpha_d",  "gamma_d",    "theta_d",    "omega_u",   "omega_l",
            "omega_1",  "omega_2",  "omega_3",  "omega_4",  "delta_a",    "delta_12",   "dhat_1",    "dhat_2",
            "dhat_3",   "dhat_4",   "dhat_5",   "dhat_6",   "mode",       "saturated",  "coax_clamped",
            "aileron_fallback",     "pitch",    "theta_cmd", "rotor_thrust", "d_true_1", "d_true_2", "d_true_3",
            "d_true_4", "d_true_5", "d_true_6", "F_p_x", "F_p_y", "F_p_z", "thrust_cmd",
            "tau_r_1", "tau_r_2", "tau_r_3"};
}

void write_run_csv(std::ostream& out, const RunLog& log) {
    const auto cols = run_csv_columns();
    for (std::size_t i = 0; i < cols.size(); ++i) out << (i ? "," : "") << cols[i];
    out << '\n';
    out << std::setprecision(10);
    for (const RunRecord& r : log.records) {
        const State& s = r.state;
        const ActuatorCommand& c = r.cmd;
        out << r.t << ',' << s.p.x() << ',' << s.p.y() << ',' << s.p.z() << ',' << s.v.x() << ',' << s.v.y() << ','
            << s.v.z() << ',' << s.q.q0 << ',' << s.q.q.x() << ',' << s.q.q.y() << ',' << s.q.q.z() << ','
            << s.omega.x() << ',' << s.omega.y() << ',' << s.omega.z() << ',' << r.p_d.x() << ',' << r.p_d.y() << ','
            << r.p_d.z() << ',' << r.v_d.x() << ',' << r.v_d.z() << ',' << r.alpha_d << ',' << r.gamma_d << ','
            << r.theta_d << ',' << c.omega_u << ',' << c.omega_l << ',' << c.omega[0] << ',' << c.omega[1] << ','
            << c.omega[2] << ',' << c.omega[3] << ',' << c.delta_a << ',' << c.delta_12;
        for (int i = 0; i < 6; ++i) out << ',' << r.d_hat[i];
        out << ',' << (c.mode == FlightMode::forward ? 1 : 0) << ',' << (c.saturated ? 1 : 0) << ','
            << (r.coax_clamped ? 1 : 0) << ',' << (r.aileron_fallback ? 1 : 0) << ',' << r.pitch << ','
            << r.theta_cmd << ',' << r.rotor_thrust;
        for (int i = 0; i < 6; ++i) out << ',' << r.d_true[i];
        out << ',' << r.F_p.x() << ',' << r.F_p.y() << ',' << r.F_p.z() << ',' << r.thrust_cmd << ',' << r.tau_r.x()
            << ',' << r.tau_r.y() << ',' << r.tau_r.z() << '\n';
    }
}

void write_summary(std::ostream& out, const RunSummary& s) {
    out << std::setprecision(8);
    out << "records = " << s.records << '\n';
    out << "duration_s = " << s.duration << '\n';
    out << "aborted = " << (s.aborted ? "true" : "false") << '\n';
    if (s.aborted) out << "abort_reason = " << s.abort_reason << '\n';
    out << "t_m_s = " << s.t_m << '\n';
    out << "final_x_m = " << s.final_x << '\n';
    out << "final_z_m = " << s.final_z << '\n';
    out << "final_z_error_m = " << s.final_z_error << '\n';
    out << "final_vx_mps = " << s.final_vx << '\n';
    out << "final_speed_mps = " << s.final_speed << '\n';
    out << "final_pitch_deg = " << s.final_pitch_deg << '\n';
    out << "max_position_error_after_tm_m = " << s.max_position_error_after_tm << '\n';
    out << "rms_position_error_after_tm_m = " << s.rms_position_error_after_tm << '\n';
    out << "max_pitch_error_after_tm_deg = " << s.max_pitch_error_after_tm_deg << '\n';
    out << "hover_mean_thrust_N = " << s.hover_mean_thrust << '\n';
    out << "hover_samples = " << s.hover_samples << '\n';
    out << "forward_mean_thrust_N = " << s.forward_mean_thrust << '\n';
    out << "forward_samples = " << s.forward_samples << '\n';
    out << "forward_over_hover_thrust = " << s.forward_mean_thrust / s.hover_mean_thrust << '\n';
    if (s.forward_switch_time) out << "forward_switch_time_s = " << *s.forward_switch_time << '\n';
    for (int i = 0; i < 6; ++i) {
        out << "estimate_rms_error_" << i + 1 << " = " << s.estimate_rms_error[i] << '\n';
        out << "disturbance_rms_" << i + 1 << " = " << s.disturbance_rms[i] << '\n';
        out << "estimate_error_ratio_" << i + 1 << " = " << s.estimate_error_ratio[i] << '\n';
    }
    out << "saturated_steps = " << s.saturated_steps << '\n';
    out << "coax_clamped_steps = " << s.coax_clamped_steps << '\n';
    out << "aileron_fallback_steps = " << s.aileron_fallback_steps << '\n';
}

void write_trajectory_csv(std::ostream& out, const TransitionReference& ref, double duration, double dt) {
    out << "t,x_d,z_d,xdot_d,zdot_d,gamma_d_deg,alpha_d_deg,theta_d_deg\n" << std::setprecision(10);
    const long n = std::lround(duration / dt);
    for (long k = 0; k <= n; ++k) {
        const double t = static_cast<double>(k) * dt;
        const TrajectoryPoint p = ref.point(t);
        const DesiredAttitude a = ref.attitude(t);
        row(out, {t, p.x_d, p.z_d, p.xdot_d, p.zdot_d, a.gamma_d / kDeg, a.alpha_d / kDeg, a.theta_d / kDeg});
    }
}

void write_bode_csv(std::ostream& out, double A0, double k1, double k2, const std::vector<double>& freqs) {
    out << "omega_rad_s,G1_mag_db,G1_phase_deg,G2_mag_db,G2_phase_deg\n" << std::setprecision(10);
    for (const BodePoint& b : bode_response(A0, k1, k2, freqs))
        row(out, {b.omega, b.g1_mag_db, b.g1_phase_deg, b.g2_mag_db, b.g2_phase_deg});
}

void write_power_factor_csv(std::ostream& out, const std::vector<double>& zetas, const std::vector<double>& etas) {
    out << "zeta,eta,kappa_total\n" << std::setprecision(10);
    for (double z : zetas)
        for (double e : etas) row(out, {z, e, induced_power_factor_total(z, e)});
}

void write_file(const std::string& path, const std::string& contents) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << contents;
    if (!f) throw IoError("write failed: " + path);
}

void export_run(const std::string& dir, const RunLog& log, const RunSummary& summary) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create directory " + dir + ": " + ec.message());
    std::ostringstream csv, sum;
    write_run_csv(csv, log);
    write_summary(sum, summary);
    write_file((std::filesystem::path(dir) / "run.csv").string(), csv.str());
    write_file((std::filesystem::path(dir) / "summary.txt").string(), sum.str());
}

}  // namespace tailsitter
