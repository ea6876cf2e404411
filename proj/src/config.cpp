#include "tailsitter/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include "tailsitter/errors.hpp"

namespace tailsitter {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, std::string_view text) {
    double value = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    if (!text.empty() && *begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) throw ParseError("value of '" + key + "' is not a number: " + std::string(text));
    return value;
}

std::uint64_t to_uint(const std::string& key, std::string_view text) {
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        throw ParseError("value of '" + key + "' is not a non-negative integer: " + std::string(text));
    return value;
}

bool to_bool(const std::string& key, std::string_view text) {
    if (text == "true" || text == "1" || text == "on") return true;
    if (text == "false" || text == "0" || text == "off") return false;
    throw ParseError("value of '" + key + "' is not a boolean: " + std::string(text));
}

using Setter = std::function<void(ScenarioConfig&, const std::string& key, std::string_view value)>;

Setter number(double ScenarioConfig::*field) {
    return [field](ScenarioConfig& c, const std::string& k, std::string_view v) { c.*field = to_double(k, v); };
}

template <typename F>
Setter num(F assign) {
    return [assign](ScenarioConfig& c, const std::string& k, std::string_view v) { assign(c, to_double(k, v)); };
}

template <typename F>
Setter word(F assign) {
    return [assign](ScenarioConfig& c, const std::string& k, std::string_view v) { assign(c, k, std::string(v)); };
}

void add_harmonic(std::vector<std::pair<std::string, Setter>>& table, const std::string& prefix, bool force, int axis) {
    const char* parts[] = {"sin_amp", "sin_freq", "cos_amp", "cos_freq"};
    for (int j = 0; j < 4; ++j) {
        table.emplace_back(prefix + parts[j], num([force, axis, j](ScenarioConfig& c, double x) {
                               HarmonicChannel& h = force ? c.disturbance.force[axis] : c.disturbance.torque[axis];
                               double* slots[] = {&h.sin_amp, &h.sin_freq, &h.cos_amp, &h.cos_freq};
                               *slots[j] = x;
                           }));
    }
}

const std::vector<std::pair<std::string, Setter>>& key_table() {
    static const std::vector<std::pair<std::string, Setter>> table = [] {
        std::vector<std::pair<std::string, Setter>> t;
        t.emplace_back("scenario.mode", word([](ScenarioConfig& c, const std::string& k, const std::string& v) {
                           if (v == "hover_to_level") c.mode = ScenarioMode::hover_to_level;
                           else if (v == "level_to_hover") c.mode = ScenarioMode::level_to_hover;
                           else if (v == "custom") c.mode = ScenarioMode::custom;
                           else throw ValidationError(k, "must be hover_to_level, level_to_hover or custom");
                       }));
        t.emplace_back("scenario.duration", number(&ScenarioConfig::duration));
        t.emplace_back("scenario.physics_dt", number(&ScenarioConfig::physics_dt));
        t.emplace_back("scenario.control_dt", number(&ScenarioConfig::control_dt));
        t.emplace_back("scenario.seed", [](ScenarioConfig& c, const std::string& k, std::string_view v) {
            c.seed = to_uint(k, v);
        });
        t.emplace_back("scenario.output", word([](ScenarioConfig& c, const std::string&, const std::string& v) {
                           c.output = v;
                       }));
        t.emplace_back("scenario.settle_time", number(&ScenarioConfig::settle_time));

        t.emplace_back("aircraft.m", num([](ScenarioConfig& c, double x) { c.aircraft.inertia.m = x; }));
        t.emplace_back("aircraft.g", num([](ScenarioConfig& c, double x) { c.aircraft.inertia.g = x; }));
        t.emplace_back("aircraft.rho", num([](ScenarioConfig& c, double x) { c.aircraft.rho = x; }));
        t.emplace_back("aircraft.J_x", num([](ScenarioConfig& c, double x) { c.aircraft.inertia.J.x() = x; }));
        t.emplace_back("aircraft.J_y", num([](ScenarioConfig& c, double x) { c.aircraft.inertia.J.y() = x; }));
        t.emplace_back("aircraft.J_z", num([](ScenarioConfig& c, double x) { c.aircraft.inertia.J.z() = x; }));

        t.emplace_back("coax.R_r", num([](ScenarioConfig& c, double x) { c.aircraft.coax.R_r = x; }));
        t.emplace_back("coax.R_d", num([](ScenarioConfig& c, double x) { c.aircraft.coax.R_d = x; }));
        t.emplace_back("coax.l_a", num([](ScenarioConfig& c, double x) { c.aircraft.coax.l_a = x; }));
        t.emplace_back("coax.lambda_c", num([](ScenarioConfig& c, double x) { c.aircraft.coax.lambda_c = x; }));

        t.emplace_back("quad.b", num([](ScenarioConfig& c, double x) { c.aircraft.quad.b = x; }));
        t.emplace_back("quad.k", num([](ScenarioConfig& c, double x) { c.aircraft.quad.k = x; }));
        t.emplace_back("quad.k_f", num([](ScenarioConfig& c, double x) { c.aircraft.quad.k_f = x; }));
        t.emplace_back("quad.l_3", num([](ScenarioConfig& c, double x) { c.aircraft.quad.l_3 = x; }));
        t.emplace_back("quad.J_r", num([](ScenarioConfig& c, double x) { c.aircraft.quad.J_r = x; }));
        t.emplace_back("quad.delta_a", num([](ScenarioConfig& c, double x) { c.aircraft.quad.delta_a = x; }));

        t.emplace_back("wing.preset", word([](ScenarioConfig& c, const std::string& k, const std::string& v) {
                           const double l_w = c.aircraft.wing.l_w;
                           const double l_c = c.aircraft.wing.l_c;
                           if (v == "baseline") c.aircraft.wing = WingParams::nominal();
                           else if (v == "fitted") c.aircraft.wing = WingParams::fitted();
                           else throw ValidationError(k, "must be baseline or fitted");
                           c.aircraft.wing.l_w = l_w;
                           c.aircraft.wing.l_c = l_c;
                           c.wing_preset = v;
                       }));
        t.emplace_back("wing.S", num([](ScenarioConfig& c, double x) { c.aircraft.wing.S = x; }));
        t.emplace_back("wing.C_L0", num([](ScenarioConfig& c, double x) { c.aircraft.wing.C_L0 = x; }));
        t.emplace_back("wing.C_Lalpha", num([](ScenarioConfig& c, double x) { c.aircraft.wing.C_Lalpha = x; }));
        t.emplace_back("wing.C_Ldelta", num([](ScenarioConfig& c, double x) { c.aircraft.wing.C_Ldelta = x; }));
        t.emplace_back("wing.C_D0", num([](ScenarioConfig& c, double x) { c.aircraft.wing.C_D0 = x; }));
        t.emplace_back("wing.A_w", num([](ScenarioConfig& c, double x) { c.aircraft.wing.A_w = x; }));
        t.emplace_back("wing.l_w", num([](ScenarioConfig& c, double x) { c.aircraft.wing.l_w = x; }));
        t.emplace_back("wing.l_c", num([](ScenarioConfig& c, double x) { c.aircraft.wing.l_c = x; }));

        t.emplace_back("fuselage.S_f", num([](ScenarioConfig& c, double x) { c.aircraft.fuselage.S_f = x; }));
        t.emplace_back("fuselage.C_lf_alpha",
                       num([](ScenarioConfig& c, double x) { c.aircraft.fuselage.C_lf_alpha = x; }));
        t.emplace_back("fuselage.C_df0", num([](ScenarioConfig& c, double x) { c.aircraft.fuselage.C_df0 = x; }));
        t.emplace_back("fuselage.C_df_alpha",
                       num([](ScenarioConfig& c, double x) { c.aircraft.fuselage.C_df_alpha = x; }));

        t.emplace_back("observer.preset", word([](ScenarioConfig& c, const std::string& k, const std::string& v) {
                           if (v == "baseline") c.observer_gains = ObserverGains::baseline();
                           else if (v == "scenario") c.observer_gains = ObserverGains::scenario_default();
                           else throw ValidationError(k, "must be baseline or scenario");
                       }));
        t.emplace_back("observer.scheme", word([](ScenarioConfig& c, const std::string& k, const std::string& v) {
                           if (v == "explicit") c.observer_scheme = ObserverScheme::explicit_euler;
                           else if (v == "implicit") c.observer_scheme = ObserverScheme::implicit_euler;
                           else throw ValidationError(k, "must be explicit or implicit");
                       }));
        for (int i = 0; i < 6; ++i) {
            const std::string n = std::to_string(i + 1);
            t.emplace_back("observer.k1_" + n, num([i](ScenarioConfig& c, double x) { c.observer_gains.k1[i] = x; }));
            t.emplace_back("observer.k2_" + n, num([i](ScenarioConfig& c, double x) { c.observer_gains.k2[i] = x; }));
        }

        t.emplace_back("control.k_a1", num([](ScenarioConfig& c, double x) { c.control.attitude.k_a1 = x; }));
        t.emplace_back("control.k_a2", num([](ScenarioConfig& c, double x) { c.control.attitude.k_a2 = x; }));
        t.emplace_back("control.k_p1", num([](ScenarioConfig& c, double x) { c.control.position.k_p1 = x; }));
        t.emplace_back("control.k_p2", num([](ScenarioConfig& c, double x) { c.control.position.k_p2 = x; }));
        t.emplace_back("control.K", num([](ScenarioConfig& c, double x) { c.control.K = x; }));
        t.emplace_back("control.K_forward", num([](ScenarioConfig& c, double x) { c.control.K_forward = x; }));
        t.emplace_back("control.K_blend_time",
                       num([](ScenarioConfig& c, double x) { c.control.K_blend_time = x; }));
        t.emplace_back("control.k_uv", num([](ScenarioConfig& c, double x) { c.control.k_uv = x; }));
        t.emplace_back("control.omega_max", num([](ScenarioConfig& c, double x) { c.control.omega_max = x; }));
        t.emplace_back("control.delta_max", num([](ScenarioConfig& c, double x) { c.control.delta_max = x; }));
        t.emplace_back("control.q_min", num([](ScenarioConfig& c, double x) { c.control.q_min = x; }));
        t.emplace_back("control.e0_min", num([](ScenarioConfig& c, double x) { c.control.e0_min = x; }));
        t.emplace_back("control.forward_gamma_deg",
                       num([](ScenarioConfig& c, double x) { c.control.forward_gamma_deg = x; }));
        t.emplace_back("control.max_pitch_correction_deg",
                       num([](ScenarioConfig& c, double x) { c.control.max_pitch_correction_deg = x; }));
        t.emplace_back("control.alpha_limit_deg",
                       num([](ScenarioConfig& c, double x) { c.control.alpha_limit_deg = x; }));
        t.emplace_back("control.alpha_limit_speed",
                       num([](ScenarioConfig& c, double x) { c.control.alpha_limit_speed = x; }));
        t.emplace_back("control.max_approach_speed",
                       num([](ScenarioConfig& c, double x) { c.control.position.max_approach_speed = x; }));
        t.emplace_back("control.max_feedback_accel",
                       num([](ScenarioConfig& c, double x) { c.control.position.max_feedback_accel = x; }));
        t.emplace_back("control.command_bandwidth",
                       num([](ScenarioConfig& c, double x) { c.control.command_bandwidth = x; }));
        t.emplace_back("control.thrust_direction",
                       word([](ScenarioConfig& c, const std::string& k, const std::string& v) {
                           if (v == "force") c.control.direction = ThrustDirection::force;
                           else if (v == "trajectory") c.control.direction = ThrustDirection::trajectory;
                           else throw ValidationError(k, "must be force or trajectory");
                       }));
        t.emplace_back("control.thrust_magnitude",
                       word([](ScenarioConfig& c, const std::string& k, const std::string& v) {
                           if (v == "projection") c.control.magnitude = ThrustMagnitude::projection;
                           else if (v == "norm") c.control.magnitude = ThrustMagnitude::norm;
                           else throw ValidationError(k, "must be projection or norm");
                       }));

        t.emplace_back("trajectory.a", num([](ScenarioConfig& c, double x) { c.trajectory.a = x; }));
        t.emplace_back("trajectory.v_0", num([](ScenarioConfig& c, double x) { c.trajectory.v_0 = x; }));
        t.emplace_back("trajectory.v_f", num([](ScenarioConfig& c, double x) { c.trajectory.v_f = x; }));
        t.emplace_back("trajectory.h_0", num([](ScenarioConfig& c, double x) { c.trajectory.h_0 = x; }));
        t.emplace_back("trajectory.k_m_h2l", number(&ScenarioConfig::k_m_h2l));
        t.emplace_back("trajectory.k_m_l2h", number(&ScenarioConfig::k_m_l2h));
        t.emplace_back("trajectory.alpha_d0_deg",
                       num([](ScenarioConfig& c, double x) { c.trajectory.alpha_d0 = x * kDeg; }));
        t.emplace_back("trajectory.gamma_s_deg",
                       num([](ScenarioConfig& c, double x) { c.trajectory.gamma_s = x * kDeg; }));
        t.emplace_back("trajectory.blend_time", num([](ScenarioConfig& c, double x) { c.trajectory.blend_time = x; }));

        t.emplace_back("disturbance.enabled", [](ScenarioConfig& c, const std::string& k, std::string_view v) {
            c.disturbance.enabled = to_bool(k, v);
        });
        const char* axes[] = {"x", "y", "z"};
        for (int a = 0; a < 3; ++a) {
            add_harmonic(t, std::string("disturbance.force.") + axes[a] + ".", true, a);
            add_harmonic(t, std::string("disturbance.torque.") + axes[a] + ".", false, a);
        }
        t.emplace_back("noise.velocity", num([](ScenarioConfig& c, double x) { c.disturbance.noise_velocity = x; }));
        t.emplace_back("noise.rate", num([](ScenarioConfig& c, double x) { c.disturbance.noise_rate = x; }));

        for (int a = 0; a < 3; ++a) {
            t.emplace_back(std::string("initial.") + axes[a], num([a](ScenarioConfig& c, double x) {
                               Vec3 p = c.initial.p.value_or(Vec3::Zero());
                               p[a] = x;
                               c.initial.p = p;
                           }));
            t.emplace_back(std::string("initial.v") + axes[a], num([a](ScenarioConfig& c, double x) {
                               Vec3 v = c.initial.v.value_or(Vec3::Zero());
                               v[a] = x;
                               c.initial.v = v;
                           }));
        }
        t.emplace_back("initial.phi_deg", num([](ScenarioConfig& c, double x) { c.initial.phi_deg = x; }));
        t.emplace_back("initial.theta_deg", num([](ScenarioConfig& c, double x) { c.initial.theta_deg = x; }));
        t.emplace_back("initial.psi_deg", num([](ScenarioConfig& c, double x) { c.initial.psi_deg = x; }));
        t.emplace_back("initial.p", num([](ScenarioConfig& c, double x) { c.initial.omega.x() = x; }));
        t.emplace_back("initial.q", num([](ScenarioConfig& c, double x) { c.initial.omega.y() = x; }));
        t.emplace_back("initial.r", num([](ScenarioConfig& c, double x) { c.initial.omega.z() = x; }));
        t.emplace_back("initial.command", word([](ScenarioConfig& c, const std::string& k, const std::string& v) {
                           if (v == "allocator") c.initial.published_speeds = false;
                           else if (v == "published") c.initial.published_speeds = true;
                           else throw ValidationError(k, "must be allocator or published");
                       }));
        return t;
    }();
    return table;
}

void require(bool ok, const char* key, const char* reason) {
    if (!ok) throw ValidationError(key, reason);
}

void positive(double x, const char* key) { require(std::isfinite(x) && x > 0.0, key, "must be positive"); }

void non_negative(double x, const char* key) { require(std::isfinite(x) && x >= 0.0, key, "must be non-negative"); }

}  // namespace

double HarmonicChannel::value(double t) const {
    return sin_amp * std::sin(sin_freq * t) + cos_amp * std::cos(cos_freq * t);
}

double HarmonicChannel::rate_bound() const {
    return std::abs(sin_amp * sin_freq) + std::abs(cos_amp * cos_freq);
}

DisturbanceSpec DisturbanceSpec::scenario() {
    DisturbanceSpec d;
    d.force = {HarmonicChannel{10.0, 3.0, 5.0, 1.0}, HarmonicChannel{5.0, 3.0, 10.0, 1.0},
               HarmonicChannel{2.5, 3.0, 15.0, 1.0}};
    d.torque = {HarmonicChannel{1.0, 3.0, 1.6, 1.0}, HarmonicChannel{1.0, 3.0, 1.0, 1.0},
                HarmonicChannel{4.0, 3.0, 1.0, 1.0}};
    return d;
}

Disturbance DisturbanceSpec::build() const {
    if (!enabled) return Disturbance::none();
    const auto f = force;
    const auto tq = torque;
    Disturbance d;
    d.force = [f](double t) { return Vec3(f[0].value(t), f[1].value(t), f[2].value(t)); };
    d.torque = [tq](double t) { return Vec3(tq[0].value(t), tq[1].value(t), tq[2].value(t)); };
    return d;
}

std::array<double, 6> DisturbanceSpec::rate_bounds(const InertiaParams& inertia) const {
    std::array<double, 6> L{};
    if (!enabled) return L;
    const Vec3 force_rate(force[0].rate_bound(), force[1].rate_bound(), force[2].rate_bound());
    const double translational = force_rate.norm() / inertia.m;
    for (int i = 0; i < 3; ++i) {
        L[i] = translational;
        L[3 + i] = torque[i].rate_bound() / inertia.J[i];
    }
    return L;
}

TransitionKind ScenarioConfig::transition_kind() const {
    return mode == ScenarioMode::level_to_hover ? TransitionKind::level_to_hover : TransitionKind::hover_to_level;
}

TransitionParams ScenarioConfig::transition_params() const {
    TransitionParams p = trajectory;
    p.k_m = transition_kind() == TransitionKind::level_to_hover ? k_m_l2h : k_m_h2l;
    return p;
}

State ScenarioConfig::initial_state() const {
    const bool cruise = mode == ScenarioMode::level_to_hover;
    State s;
    s.p = initial.p.value_or(Vec3::Zero());
    s.v = initial.v.value_or(cruise ? Vec3(trajectory.v_f, 0.0, 0.0) : Vec3::Zero());
    const double theta = initial.theta_deg.value_or(cruise ? 5.0 : 90.0);
    s.q = flight_attitude({initial.phi_deg * kDeg, theta * kDeg, initial.psi_deg * kDeg});
    s.omega = initial.omega;
    return s;
}

ScenarioConfig parse_config(std::string_view text) {
    std::map<std::string_view, const Setter*> lookup;
    for (const auto& [key, setter] : key_table()) lookup.emplace(key, &setter);

    ScenarioConfig cfg;
    std::set<std::string> seen;
    std::istringstream in{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string_view value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ParseError("line " + std::to_string(line_no) + ": empty key or value");
        if (!seen.insert(key).second)
            throw ParseError("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        const auto it = lookup.find(key);
        if (it == lookup.end()) throw ValidationError(key, "unknown key");
        (*it->second)(cfg, key, value);
    }
    validate(cfg);
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_config(buf.str());
}

std::vector<std::string> config_keys() {
    std::vector<std::string> keys;
    for (const auto& entry : key_table()) keys.push_back(entry.first);
    return keys;
}

void validate(const ScenarioConfig& c) {
    positive(c.duration, "scenario.duration");
    positive(c.physics_dt, "scenario.physics_dt");
    require(c.physics_dt <= 0.02, "scenario.physics_dt", "must not exceed 0.02 s");
    positive(c.control_dt, "scenario.control_dt");
    require(c.physics_dt <= c.control_dt, "scenario.control_dt", "must be at least physics_dt");
    const double ratio = c.control_dt / c.physics_dt;
    require(std::abs(ratio - std::round(ratio)) < 1e-9 * ratio, "scenario.control_dt",
            "must be an integer multiple of physics_dt");
    non_negative(c.settle_time, "scenario.settle_time");
    require(!c.output.empty(), "scenario.output", "must not be empty");

    const auto& a = c.aircraft;
    positive(a.inertia.m, "aircraft.m");
    positive(a.inertia.g, "aircraft.g");
    positive(a.rho, "aircraft.rho");
    positive(a.inertia.J.x(), "aircraft.J_x");
    positive(a.inertia.J.y(), "aircraft.J_y");
    positive(a.inertia.J.z(), "aircraft.J_z");
    positive(a.coax.R_r, "coax.R_r");
    non_negative(a.coax.l_a, "coax.l_a");
    require(a.coax.l_a < a.coax.R_r, "coax.l_a", "must be smaller than coax.R_r");
    positive(a.coax.R_d, "coax.R_d");
    positive(a.coax.lambda_c, "coax.lambda_c");
    positive(a.quad.b, "quad.b");
    positive(a.quad.k, "quad.k");
    non_negative(a.quad.k_f, "quad.k_f");
    positive(a.quad.l_3, "quad.l_3");
    non_negative(a.quad.J_r, "quad.J_r");
    non_negative(a.quad.delta_a, "quad.delta_a");
    positive(a.wing.S, "wing.S");
    positive(a.wing.C_Ldelta, "wing.C_Ldelta");
    non_negative(a.wing.C_D0, "wing.C_D0");
    positive(a.wing.A_w, "wing.A_w");
    positive(a.wing.l_w, "wing.l_w");
    require(std::isfinite(a.wing.l_c), "wing.l_c", "must be finite");
    require(std::isfinite(a.wing.C_L0), "wing.C_L0", "must be finite");
    require(std::isfinite(a.wing.C_Lalpha), "wing.C_Lalpha", "must be finite");
    non_negative(a.fuselage.S_f, "fuselage.S_f");

    static const char* k1_keys[] = {"observer.k1_1", "observer.k1_2", "observer.k1_3",
                                    "observer.k1_4", "observer.k1_5", "observer.k1_6"};
    static const char* k2_keys[] = {"observer.k2_1", "observer.k2_2", "observer.k2_3",
                                    "observer.k2_4", "observer.k2_5", "observer.k2_6"};
    const auto L = c.disturbance.rate_bounds(a.inertia);
    for (int i = 0; i < 6; ++i) {
        positive(c.observer_gains.k1[i], k1_keys[i]);
        positive(c.observer_gains.k2[i], k2_keys[i]);
        if (c.observer_gains.k2[i] <= L[i]) {
            std::ostringstream msg;
            msg << "must exceed the disturbance derivative bound L = " << L[i]
                << " (finite-time convergence requires k2 > L)";
            throw ValidationError(k2_keys[i], msg.str());
        }
    }

    positive(c.control.attitude.k_a1, "control.k_a1");
    positive(c.control.attitude.k_a2, "control.k_a2");
    positive(c.control.position.k_p1, "control.k_p1");
    positive(c.control.position.k_p2, "control.k_p2");
    positive(c.control.K, "control.K");
    non_negative(c.control.K_forward, "control.K_forward");
    non_negative(c.control.K_blend_time, "control.K_blend_time");
    positive(c.control.k_uv, "control.k_uv");
    positive(c.control.omega_max, "control.omega_max");
    positive(c.control.delta_max, "control.delta_max");
    non_negative(c.control.q_min, "control.q_min");
    require(c.control.e0_min > 0.0 && c.control.e0_min < 1.0, "control.e0_min", "must lie in (0, 1)");
    require(c.control.forward_gamma_deg > 0.0 && c.control.forward_gamma_deg < 90.0, "control.forward_gamma_deg",
            "must lie in (0, 90)");
    positive(c.control.max_pitch_correction_deg, "control.max_pitch_correction_deg");
    positive(c.control.command_bandwidth, "control.command_bandwidth");
    positive(c.control.alpha_limit_deg, "control.alpha_limit_deg");
    positive(c.control.alpha_limit_speed, "control.alpha_limit_speed");
    require(c.control.position.max_approach_speed > 0.0, "control.max_approach_speed", "must be positive");
    require(c.control.position.max_feedback_accel > 0.0, "control.max_feedback_accel", "must be positive");
    require(c.control.command_bandwidth * c.control_dt < 0.5, "control.command_bandwidth",
            "must stay below 0.5 / control_dt for a stable discrete filter");

    const auto& t = c.trajectory;
    positive(t.a, "trajectory.a");
    non_negative(t.v_0, "trajectory.v_0");
    require(std::isfinite(t.v_f) && t.v_f > t.v_0, "trajectory.v_f", "must exceed trajectory.v_0");
    positive(t.h_0, "trajectory.h_0");
    positive(c.k_m_h2l, "trajectory.k_m_h2l");
    positive(c.k_m_l2h, "trajectory.k_m_l2h");
    require(std::isfinite(t.alpha_d0) && std::abs(t.alpha_d0) < std::numbers::pi / 4, "trajectory.alpha_d0_deg",
            "must lie in (-45, 45)");
    require(t.gamma_s > 0.0 && t.gamma_s <= std::numbers::pi / 2, "trajectory.gamma_s_deg", "must lie in (0, 90]");
    positive(t.blend_time, "trajectory.blend_time");

    non_negative(c.disturbance.noise_velocity, "noise.velocity");
    non_negative(c.disturbance.noise_rate, "noise.rate");
    for (int i = 0; i < 3; ++i) {
        for (const auto* h : {&c.disturbance.force[i], &c.disturbance.torque[i]}) {
            require(std::isfinite(h->rate_bound()), "disturbance", "harmonic coefficients must be finite");
        }
    }
    if (c.initial.theta_deg)
        require(std::abs(*c.initial.theta_deg) <= 180.0, "initial.theta_deg", "must lie in [-180, 180]");
}

}  // namespace tailsitter
