#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "acsum/io.hpp"
#include "acsum/signal.hpp"

namespace acsum::cli {

/// Everything a run needs. JSON configs use the same key names; command
/// line flags override them.
struct AnalysisConfig {
  std::string command = "analyze";  // generate, analyze, spectrum, tauber, chain, cyclic
  std::string input;                // generator JSON or samples CSV
  std::string analysis = "cesaro";  // cesaro, spectral, tauber, chain, cyclic-suite
  std::string domain = "discrete";  // discrete, continuous
  std::string extension = "valid_only";

  std::int64_t n_min = 0;
  std::int64_t n_max = 4096;
  double x0 = 0.0;
  double h = 0.05;
  std::size_t count = 4097;

  double k_min = 2.0;
  double k_max = 256.0;
  double growth = 2.0;
  std::string sidedness = "two_sided";
  std::size_t stride = 1;
  std::vector<double> delta_schedule{0.05, 0.02, 0.01};
  std::string taper = "hann";

  std::string tauber_mode = "abel";  // abel, laplace, residue, fatou, primitive
  std::vector<double> x_schedule;    // empty: the method's default
  std::size_t coefficients = std::size_t{1} << 17;
  double tail_tol = 1e-3;
  cplx f1;
  cplx l0;
  bool check_lower_bound = false;
  double lower_bound = 0.0;

  std::vector<std::size_t> orders{64};
  std::size_t cases = 100;
  std::uint64_t seed = 0;

  double tol = 1e-2;
  std::string out_dir = ".";
  std::string report = "report.json";
  std::string curves;  // CSV file name; empty picks a per-command default
  std::string output;  // generate: CSV path relative to out_dir
};

/// Keys absent from `j` keep their value in `base`. Unknown keys are a
/// ConfigError.
AnalysisConfig config_from_json(const io::json& j, AnalysisConfig base = {});

/// Throws ConfigError unless tol > 0, k_min < k_max and growth > 1 (and
/// similar sanity conditions).
void validate(const AnalysisConfig& config);

/// Runs the command and writes its files. Exit status: 0 on a completed
/// analysis whatever the verdict, 1 on configuration errors, 2 when a
/// module reports a violated hypothesis. Diagnostics go to `err`.
int run(const AnalysisConfig& config, std::ostream& err);

/// The report JSON `run` would write, without touching the filesystem.
io::json build_report(const AnalysisConfig& config);

/// argv front end.
int main_entry(int argc, char** argv);

}  // namespace acsum::cli
