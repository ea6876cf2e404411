#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "tailsitter/scenario.hpp"
#include "tailsitter/trajectory.hpp"

namespace tailsitter {

/// Column order of the run CSV.
std::vector<std::string> run_csv_columns();

void write_run_csv(std::ostream& out, const RunLog& log);
void write_summary(std::ostream& out, const RunSummary& summary);
void write_trajectory_csv(std::ostream& out, const TransitionReference& ref, double duration, double dt);
void write_bode_csv(std::ostream& out, double A0, double k1, double k2, const std::vector<double>& freqs);
void write_power_factor_csv(std::ostream& out, const std::vector<double>& zetas, const std::vector<double>& etas);

/// Writes run.csv and summary.txt under dir, creating it if needed. Throws IoError.
void export_run(const std::string& dir, const RunLog& log, const RunSummary& summary);

/// Opens path for writing or throws IoError.
void write_file(const std::string& path, const std::string& contents);

}  // namespace tailsitter
