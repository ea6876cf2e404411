#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <iostream>
#include <sstream>

#include "tailsitter/config.hpp"
#include "tailsitter/errors.hpp"
#include "tailsitter/export.hpp"
#include "tailsitter/scenario.hpp"

using namespace tailsitter;

namespace {

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    for (int i = 0; i < n; ++i) v.push_back(n == 1 ? lo : lo + (hi - lo) * i / (n - 1));
    return v;
}

std::vector<double> logspace(double lo, double hi, int n) {
    std::vector<double> v;
    for (double e : linspace(std::log10(lo), std::log10(hi), n)) v.push_back(std::pow(10.0, e));
    return v;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_file(path, text);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tail-sitter transition simulator"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<double> duration;
    auto* run = app.add_subcommand("run", "closed-loop scenario; writes run.csv and summary.txt");
    run->add_option("config", config_path, "scenario config file")->required();
    run->add_option("--out", out_dir, "output directory (default: scenario.output)");
    run->add_option("--seed", seed, "noise seed override");
    run->add_option("--duration", duration, "duration override (s)");

    std::string traj_out;
    double traj_dt = 0.01;
    auto* traj = app.add_subcommand("traj", "reference trajectory preview CSV");
    traj->add_option("config", config_path, "scenario config file")->required();
    traj->add_option("--out", traj_out, "output file (default: stdout)");
    traj->add_option("--dt", traj_dt, "sample spacing (s)")->check(CLI::PositiveNumber);

    double k1 = 6.0, k2 = 8.0;
    std::vector<double> a0_list{10.0, 1.0, 0.1, 0.01};
    double w_lo = 0.01, w_hi = 1000.0;
    int w_n = 400;
    std::string bode_dir = ".";
    auto* bode = app.add_subcommand("bode", "describing-function frequency response, one CSV per amplitude");
    bode->add_option("--k1", k1)->check(CLI::PositiveNumber);
    bode->add_option("--k2", k2)->check(CLI::PositiveNumber);
    bode->add_option("--a0-list", a0_list, "input amplitudes")->delimiter(',');
    bode->add_option("--w-min", w_lo)->check(CLI::PositiveNumber);
    bode->add_option("--w-max", w_hi)->check(CLI::PositiveNumber);
    bode->add_option("--points", w_n)->check(CLI::PositiveNumber);
    bode->add_option("--out", bode_dir, "output directory");

    std::vector<double> zeta_grid{0.01, 0.99, 20}, eta_grid{0.1, 10.0, 20};
    std::string pf_out;
    auto* pf = app.add_subcommand("power-factor", "induced power factor sweep CSV");
    pf->add_option("--zeta-grid", zeta_grid, "lo,hi,n (linear)")->delimiter(',')->expected(3);
    pf->add_option("--eta-grid", eta_grid, "lo,hi,n (logarithmic)")->delimiter(',')->expected(3);
    pf->add_option("--out", pf_out, "output file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            ScenarioConfig cfg = load_config(config_path);
            if (seed) cfg.seed = *seed;
            if (duration) cfg.duration = *duration;
            validate(cfg);
            const auto start = std::chrono::steady_clock::now();
            const RunLog log = run_scenario(cfg);
            const RunSummary summary = summarize(log, cfg);
            const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            const std::string dir = out_dir.empty() ? cfg.output : out_dir;
            export_run(dir, log, summary);
            std::cout << "wrote " << log.records.size() << " records to " << dir << " in " << wall << " s\n";
            if (log.aborted) {
                std::cerr << "run aborted: " << log.abort_reason << '\n';
                return 3;
            }
        } else if (*traj) {
            const ScenarioConfig cfg = load_config(config_path);
            if (cfg.mode == ScenarioMode::custom) throw ValidationError("scenario.mode", "custom mode has no transition");
            const TransitionReference ref(cfg.transition_kind(), cfg.transition_params());
            std::ostringstream s;
            write_trajectory_csv(s, ref, cfg.duration, traj_dt);
            emit(traj_out, s.str());
        } else if (*bode) {
            if (!(w_hi > w_lo)) throw ValidationError("--w-max", "must exceed --w-min");
            std::filesystem::create_directories(bode_dir);
            const auto freqs = logspace(w_lo, w_hi, w_n);
            for (double a0 : a0_list) {
                std::ostringstream s;
                write_bode_csv(s, a0, k1, k2, freqs);
                std::ostringstream name;
                name << "bode_A0_" << a0 << ".csv";
                const auto path = (std::filesystem::path(bode_dir) / name.str()).string();
                write_file(path, s.str());
                std::cout << path << '\n';
            }
        } else if (*pf) {
            const auto count = [](double n, const char* key) {
                if (!(n >= 1.0) || n != std::floor(n)) throw ValidationError(key, "point count must be a positive integer");
                return static_cast<int>(n);
            };
            std::ostringstream s;
            write_power_factor_csv(s, linspace(zeta_grid[0], zeta_grid[1], count(zeta_grid[2], "--zeta-grid")),
                                   logspace(eta_grid[0], eta_grid[1], count(eta_grid[2], "--eta-grid")));
            emit(pf_out, s.str());
        }
    } catch (const ValidationError& e) {
        std::cerr << "invalid configuration: " << e.key() << ": " << e.reason() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
