#include "acsum/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <variant>

#include "acsum/cesaro.hpp"
#include "acsum/cyclic.hpp"
#include "acsum/error.hpp"
#include "acsum/generators.hpp"
#include "acsum/spectral.hpp"
#include "acsum/tauberian.hpp"

namespace acsum::cli {

namespace {

using io::json;

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::ConfigError, what);
}

bool one_of(const std::string& v, std::initializer_list<const char*> options) {
  for (const char* o : options) {
    if (v == o) return true;
  }
  return false;
}

Extension extension_of(const AnalysisConfig& c) {
  return c.extension == "zero_outside" ? Extension::ZeroOutside : Extension::ValidOnly;
}

Sidedness sidedness_of(const AnalysisConfig& c) {
  return c.sidedness == "one_sided" ? Sidedness::OneSided : Sidedness::TwoSided;
}

bool is_csv(const std::string& path) {
  return std::filesystem::path(path).extension() == ".csv";
}

/// Loaded input: a generator, or raw samples when the input is a CSV file.
struct Input {
  std::optional<GeneratorSpec> spec;
  std::string csv;

  bool grid_relative() const {
    return !spec || std::holds_alternative<Custom>(*spec);
  }
};

Input load_input(const AnalysisConfig& c) {
  if (c.input.empty()) config_error("no input given (--input)");
  Input in;
  const auto text = io::read_file(c.input);
  if (is_csv(c.input)) {
    in.csv = text;
    return in;
  }
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    config_error("cannot parse " + c.input + ": " + e.what());
  }
  in.spec = io::generator_from_json(j);
  return in;
}

DiscreteSignal discrete_signal(const Input& in, const AnalysisConfig& c) {
  if (in.spec) return render_discrete(*in.spec, c.n_min, c.n_max, extension_of(c));
  return io::discrete_from_csv(in.csv, extension_of(c));
}

ContinuousSignal continuous_signal(const Input& in, const AnalysisConfig& c) {
  if (in.spec) return render_continuous(*in.spec, c.x0, c.h, c.count, extension_of(c));
  return io::continuous_from_csv(in.csv, extension_of(c));
}

bool continuous(const AnalysisConfig& c) { return c.domain == "continuous"; }

/// A run's products: the JSON report plus an optional CSV of curves.
struct Outputs {
  json report;
  std::string curves_name;
  std::string curves;
};

std::string curves_name(const AnalysisConfig& c, const char* fallback) {
  return c.curves.empty() ? fallback : c.curves;
}

json echo(const AnalysisConfig& c, const Input& in) {
  json j{{"domain", c.domain}, {"extension", c.extension}, {"tol", c.tol}};
  if (in.spec) {
    j["generator"] = io::to_json(*in.spec);
  } else {
    j["samples"] = std::filesystem::path(c.input).filename().string();
  }
  if (continuous(c)) {
    j["x0"] = c.x0;
    j["h"] = c.h;
    j["count"] = c.count;
  } else {
    j["n_min"] = c.n_min;
    j["n_max"] = c.n_max;
  }
  return j;
}

Outputs cesaro_outputs(const AnalysisConfig& c, const Input& in) {
  const auto schedule = WindowSchedule::geometric(c.k_min, c.k_max, c.growth, sidedness_of(c));
  cesaro::CesaroSweep sweep =
      continuous(c) ? cesaro::cesaro_sweep(continuous_signal(in, c), schedule, c.stride)
                    : cesaro::cesaro_sweep(discrete_signal(in, c), schedule, c.stride);
  sweep.grid_relative = in.grid_relative();
  const auto verdict = cesaro::ac_verdict(sweep, c.tol);
  Outputs out;
  out.report = io::report("cesaro", {{"input", echo(c, in)},
                                     {"sweep", io::to_json(sweep)},
                                     {"verdict", io::to_json(verdict)}});
  out.curves_name = curves_name(c, "sweep.csv");
  out.curves = io::sweep_csv(sweep);
  return out;
}

Outputs spectral_outputs(const AnalysisConfig& c, const Input& in) {
  AcVerdict verdict;
  spectral::SpectrumEstimate est;
  const auto taper = c.taper == "rectangular" ? spectral::Taper::Rectangular : spectral::Taper::Hann;
  if (continuous(c)) {
    const auto s = continuous_signal(in, c);
    verdict = spectral::spectral_ac_verdict(s, c.delta_schedule, c.tol);
    est = spectral::dft_spectrum(s, taper);
  } else {
    const auto s = discrete_signal(in, c);
    verdict = spectral::spectral_ac_verdict(s, c.delta_schedule, c.tol);
    est = spectral::dft_spectrum(s, taper);
  }
  Outputs out;
  out.report = io::report("spectral", {{"input", echo(c, in)},
                                       {"delta_schedule", c.delta_schedule},
                                       {"spectrum", io::to_json(est)},
                                       {"verdict", io::to_json(verdict)}});
  out.curves_name = curves_name(c, "spectrum.csv");
  out.curves = io::spectrum_csv(est);
  return out;
}

Outputs spectrum_outputs(const AnalysisConfig& c, const Input& in) {
  const auto taper = c.taper == "rectangular" ? spectral::Taper::Rectangular : spectral::Taper::Hann;
  const auto est = continuous(c) ? spectral::dft_spectrum(continuous_signal(in, c), taper)
                                 : spectral::dft_spectrum(discrete_signal(in, c), taper);
  json body{{"input", echo(c, in)}, {"spectrum", io::to_json(est)}};
  if (in.spec && declared_frequencies(*in.spec)) {
    body["support_check"] = io::to_json(spectral::spectrum_support_check(*in.spec, est, 0.0));
  }
  Outputs out;
  out.report = io::report("spectrum", std::move(body));
  out.curves_name = curves_name(c, "spectrum.csv");
  out.curves = io::spectrum_csv(est);
  return out;
}

tauber::CoefficientStream coefficient_stream(const AnalysisConfig& c, const Input& in) {
  if (in.spec) return tauber::CoefficientStream::from_generator(*in.spec, c.coefficients);
  const auto s = io::discrete_from_csv(in.csv);
  if (s.n_min() != 0) config_error("coefficient CSV must start at index 0");
  const auto v = s.values();
  return tauber::CoefficientStream::from_values({v.begin(), v.end()});
}

Outputs tauber_outputs(const AnalysisConfig& c, const Input& in) {
  Outputs out;
  json body{{"input", echo(c, in)}, {"mode", c.tauber_mode}};
  const std::string& mode = c.tauber_mode;

  if (mode == "laplace" || mode == "primitive") {
    const auto psi = continuous_signal(in, c);
    if (c.check_lower_bound && !tauber::bounded_below(psi, c.lower_bound)) {
      throw Error(ErrorCode::HypothesisViolated, "signal is not bounded from below by -C");
    }
    if (mode == "laplace") {
      const auto x = c.x_schedule.empty() ? tauber::laplace_schedule() : c.x_schedule;
      const auto sweep = tauber::laplace_sweep(psi, x, c.tail_tol);
      body["sweep"] = io::to_json(sweep);
      out.curves = io::mean_sweep_csv(sweep);
    } else {
      tauber::PrimitiveConfig pc;
      pc.theta_min = c.k_min;
      pc.theta_max = c.k_max;
      pc.growth = c.growth;
      pc.shift_stride = c.stride;
      body["primitive"] = io::to_json(tauber::primitive_oac_check(psi, c.l0, c.tol, pc));
    }
  } else {
    const auto a = coefficient_stream(c, in);
    const std::size_t available = a.length().value_or(c.coefficients);
    if (c.check_lower_bound && !tauber::bounded_below(a, c.lower_bound, available)) {
      throw Error(ErrorCode::HypothesisViolated, "coefficients are not bounded from below by -C");
    }
    const auto x = c.x_schedule.empty() ? tauber::abel_schedule() : c.x_schedule;
    if (mode == "abel") {
      const auto sweep = tauber::abel_sweep(a, x);
      body["sweep"] = io::to_json(sweep);
      out.curves = io::mean_sweep_csv(sweep);
    } else if (mode == "residue") {
      tauber::OacConfig oc;
      oc.length = available;
      oc.k_min = c.k_min;
      oc.k_max = c.k_max;
      oc.growth = c.growth;
      oc.tol = c.tol;
      const auto r = tauber::residue_oac_estimate(a, x, oc);
      body["residue"] = io::to_json(r);
      out.curves = io::mean_sweep_csv(r.sweep);
    } else {
      tauber::FatouConfig fc;
      fc.oac_length = available - 1;
      fc.oac_k_max = c.k_max;
      body["fatou"] = io::to_json(tauber::fatou_check(a, c.f1, c.tol, fc));
    }
  }
  if (!out.curves.empty()) out.curves_name = curves_name(c, "mean_sweep.csv");
  out.report = io::report("tauber", std::move(body));
  return out;
}

Outputs chain_outputs(const AnalysisConfig& c, const Input& in) {
  tauber::ChainConfig cc;
  cc.tol = c.tol;
  const auto r = continuous(c) ? tauber::chain_report(continuous_signal(in, c), cc)
                               : tauber::chain_report(discrete_signal(in, c), cc);
  Outputs out;
  out.report = io::report("chain", {{"input", echo(c, in)}, {"chain", io::to_json(r)}});
  return out;
}

Outputs cyclic_outputs(const AnalysisConfig& c) {
  json suites = json::array();
  bool all = true;
  for (std::size_t n : c.orders) {
    const auto r = cyclic::run_suite(n, c.cases, c.seed);
    all = all && r.all_pass();
    suites.push_back(io::to_json(r));
  }
  Outputs out;
  out.report = io::report("cyclic-suite", {{"seed", c.seed},
                                           {"cases", c.cases},
                                           {"suites", suites},
                                           {"all_pass", all}});
  return out;
}

Outputs compute(const AnalysisConfig& c) {
  validate(c);
  if (c.command == "cyclic" || (c.command == "analyze" && c.analysis == "cyclic-suite")) {
    return cyclic_outputs(c);
  }
  const Input in = load_input(c);
  if (c.command == "generate") {
    Outputs out;
    out.curves_name = c.output.empty() ? "signal.csv" : c.output;
    out.curves = continuous(c) ? io::signal_csv(continuous_signal(in, c))
                               : io::signal_csv(discrete_signal(in, c));
    return out;
  }
  if (c.command == "spectrum") return spectrum_outputs(c, in);
  if (c.command == "tauber") return tauber_outputs(c, in);
  if (c.command == "chain") return chain_outputs(c, in);
  if (c.analysis == "spectral") return spectral_outputs(c, in);
  if (c.analysis == "tauber") return tauber_outputs(c, in);
  if (c.analysis == "chain") return chain_outputs(c, in);
  return cesaro_outputs(c, in);
}

// JSON config keys, each bound to its field.
template <class T>
void read_key(const json& j, const char* key, T& dst) {
  if (!j.contains(key)) return;
  try {
    if constexpr (std::is_same_v<T, cplx>) {
      dst = io::complex_from_json(j.at(key));
    } else {
      dst = j.at(key).get<T>();
    }
  } catch (const json::exception&) {
    config_error(std::string("config key \"") + key + "\" has the wrong type");
  }
}

}  // namespace

AnalysisConfig config_from_json(const json& j, AnalysisConfig c) {
  if (!j.is_object()) config_error("config must be a JSON object");
  static const std::vector<std::string> known{
      "command", "input", "analysis", "domain", "extension", "n_min", "n_max", "x0", "h",
      "count", "k_min", "k_max", "growth", "sidedness", "stride", "delta_schedule", "taper",
      "tauber_mode", "x_schedule", "coefficients", "tail_tol", "f1", "l0", "lower_bound",
      "orders", "cases", "seed", "tol", "out_dir", "report", "curves", "output"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
      config_error("unknown config key \"" + it.key() + "\"");
    }
  }
  read_key(j, "command", c.command);
  read_key(j, "input", c.input);
  read_key(j, "analysis", c.analysis);
  read_key(j, "domain", c.domain);
  read_key(j, "extension", c.extension);
  read_key(j, "n_min", c.n_min);
  read_key(j, "n_max", c.n_max);
  read_key(j, "x0", c.x0);
  read_key(j, "h", c.h);
  read_key(j, "count", c.count);
  read_key(j, "k_min", c.k_min);
  read_key(j, "k_max", c.k_max);
  read_key(j, "growth", c.growth);
  read_key(j, "sidedness", c.sidedness);
  read_key(j, "stride", c.stride);
  read_key(j, "delta_schedule", c.delta_schedule);
  read_key(j, "taper", c.taper);
  read_key(j, "tauber_mode", c.tauber_mode);
  read_key(j, "x_schedule", c.x_schedule);
  read_key(j, "coefficients", c.coefficients);
  read_key(j, "tail_tol", c.tail_tol);
  read_key(j, "f1", c.f1);
  read_key(j, "l0", c.l0);
  if (j.contains("lower_bound")) {
    read_key(j, "lower_bound", c.lower_bound);
    c.check_lower_bound = true;
  }
  read_key(j, "orders", c.orders);
  read_key(j, "cases", c.cases);
  read_key(j, "seed", c.seed);
  read_key(j, "tol", c.tol);
  read_key(j, "out_dir", c.out_dir);
  read_key(j, "report", c.report);
  read_key(j, "curves", c.curves);
  read_key(j, "output", c.output);
  return c;
}

void validate(const AnalysisConfig& c) {
  if (!one_of(c.command, {"generate", "analyze", "spectrum", "tauber", "chain", "cyclic"})) {
    config_error("unknown command \"" + c.command + "\"");
  }
  if (!one_of(c.analysis, {"cesaro", "spectral", "tauber", "chain", "cyclic-suite"})) {
    config_error("unknown analysis \"" + c.analysis + "\"");
  }
  if (!one_of(c.domain, {"discrete", "continuous"})) config_error("domain must be discrete or continuous");
  if (!one_of(c.extension, {"valid_only", "zero_outside"})) {
    config_error("extension must be valid_only or zero_outside");
  }
  if (!one_of(c.sidedness, {"two_sided", "one_sided"})) {
    config_error("sidedness must be two_sided or one_sided");
  }
  if (!one_of(c.taper, {"hann", "rectangular"})) config_error("taper must be hann or rectangular");
  if (!one_of(c.tauber_mode, {"abel", "laplace", "residue", "fatou", "primitive"})) {
    config_error("unknown tauber mode \"" + c.tauber_mode + "\"");
  }
  if (!(c.tol > 0.0)) config_error("tol must be > 0");
  if (!(c.k_min > 0.0) || !(c.k_min < c.k_max)) config_error("need 0 < k_min < k_max");
  if (!(c.growth > 1.0)) config_error("growth must be > 1");
  if (c.stride < 1) config_error("stride must be >= 1");
  if (c.n_min > c.n_max) config_error("need n_min <= n_max");
  if (!(c.h > 0.0)) config_error("h must be > 0");
  if (c.count < 1) config_error("count must be >= 1");
  if (c.coefficients < 2) config_error("coefficients must be >= 2");
  if (c.orders.empty()) config_error("orders must not be empty");
  for (std::size_t n : c.orders) {
    if (n < 1) config_error("cyclic orders must be >= 1");
  }
}

io::json build_report(const AnalysisConfig& config) { return compute(config).report; }

int run(const AnalysisConfig& config, std::ostream& err) {
  try {
    const Outputs out = compute(config);
    const std::filesystem::path dir(config.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) config_error("cannot create " + dir.string());
    if (!out.report.is_null()) io::write_atomic(dir / config.report, io::dump(out.report));
    if (!out.curves_name.empty()) io::write_atomic(dir / out.curves_name, out.curves);
    return 0;
  } catch (const Error& e) {
    err << "acsum: " << e.what() << "\n";
    return e.code() == ErrorCode::HypothesisViolated ? 2 : 1;
  } catch (const std::exception& e) {
    err << "acsum: " << e.what() << "\n";
    return 1;
  }
}

int main_entry(int argc, char** argv) {
  CLI::App app{"Almost-convergence analysis of sampled sequences and functions"};
  app.require_subcommand(1);

  AnalysisConfig flags;
  std::string config_path;
  std::vector<double> f1;
  std::vector<double> l0;
  // Applied over the JSON config for every flag the user actually gave.
  std::vector<std::pair<CLI::Option*, std::function<void(AnalysisConfig&)>>> overrides;

  auto bind = [&](CLI::App* sub, const std::string& name, auto member, const std::string& help) {
    auto* opt = sub->add_option(name, flags.*member, help);
    overrides.emplace_back(opt, [&flags, member](AnalysisConfig& dst) { dst.*member = flags.*member; });
    return opt;
  };

  const std::vector<std::pair<std::string, std::string>> commands{
      {"generate", "Render a generator to samples CSV"},
      {"analyze", "Run an analysis (cesaro, spectral, tauber, chain, cyclic-suite)"},
      {"spectrum", "Tapered DFT spectrum and support check"},
      {"tauber", "Abel/Laplace mean sweeps, residue, Fatou and primitive checks"},
      {"chain", "Ordinary, weak* and almost-convergence verdicts side by side"},
      {"cyclic", "Randomised Z_N duality suite"}};

  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path, "JSON config; flags override its keys");
    bind(sub, "--input,-i", &AnalysisConfig::input, "Generator JSON or samples CSV");
    bind(sub, "--analysis", &AnalysisConfig::analysis, "cesaro|spectral|tauber|chain|cyclic-suite");
    bind(sub, "--domain", &AnalysisConfig::domain, "discrete|continuous");
    bind(sub, "--extension", &AnalysisConfig::extension, "valid_only|zero_outside");
    bind(sub, "--n-min", &AnalysisConfig::n_min, "First index (discrete)");
    bind(sub, "--n-max", &AnalysisConfig::n_max, "Last index (discrete)");
    bind(sub, "--x0", &AnalysisConfig::x0, "First grid point (continuous)");
    bind(sub, "--step", &AnalysisConfig::h, "Grid step (continuous)");
    bind(sub, "--count", &AnalysisConfig::count, "Number of samples (continuous)");
    bind(sub, "--k-min", &AnalysisConfig::k_min, "Smallest window length");
    bind(sub, "--k-max", &AnalysisConfig::k_max, "Largest window length");
    bind(sub, "--growth", &AnalysisConfig::growth, "Geometric growth of window lengths");
    bind(sub, "--sidedness", &AnalysisConfig::sidedness, "two_sided|one_sided");
    bind(sub, "--stride", &AnalysisConfig::stride, "Shift grid stride in samples");
    bind(sub, "--delta", &AnalysisConfig::delta_schedule, "Spectral gap schedule, decreasing");
    bind(sub, "--taper", &AnalysisConfig::taper, "hann|rectangular");
    bind(sub, "--mode", &AnalysisConfig::tauber_mode, "abel|laplace|residue|fatou|primitive");
    bind(sub, "--x", &AnalysisConfig::x_schedule, "Abscissa schedule for mean sweeps");
    bind(sub, "--coefficients", &AnalysisConfig::coefficients, "Coefficients rendered from a generator");
    bind(sub, "--tail-tol", &AnalysisConfig::tail_tol, "Laplace truncation tolerance");
    auto* f1_opt = sub->add_option("--f1", f1, "Declared f(1): re [im]")->expected(1, 2);
    auto* l0_opt = sub->add_option("--l0", l0, "Declared transform value at 0: re [im]")->expected(1, 2);
    auto* lb_opt = bind(sub, "--lower-bound", &AnalysisConfig::lower_bound, "Check re, im >= -C");
    bind(sub, "--orders", &AnalysisConfig::orders, "Cyclic group orders");
    bind(sub, "--cases", &AnalysisConfig::cases, "Random cases per order");
    bind(sub, "--seed", &AnalysisConfig::seed, "Seed for randomised suites");
    bind(sub, "--tol", &AnalysisConfig::tol, "Decision tolerance");
    bind(sub, "--out-dir", &AnalysisConfig::out_dir, "Directory for reports");
    bind(sub, "--report", &AnalysisConfig::report, "Report file name");
    bind(sub, "--curves", &AnalysisConfig::curves, "CSV file name");
    bind(sub, "--output,-o", &AnalysisConfig::output, "generate: CSV file name");
    overrides.emplace_back(f1_opt, [&f1](AnalysisConfig& d) {
      d.f1 = {f1.at(0), f1.size() > 1 ? f1[1] : 0.0};
    });
    overrides.emplace_back(l0_opt, [&l0](AnalysisConfig& d) {
      d.l0 = {l0.at(0), l0.size() > 1 ? l0[1] : 0.0};
    });
    overrides.emplace_back(lb_opt, [](AnalysisConfig& d) { d.check_lower_bound = true; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  AnalysisConfig config;
  try {
    if (!config_path.empty()) {
      json j;
      try {
        j = json::parse(io::read_file(config_path));
      } catch (const json::exception& e) {
        config_error("cannot parse " + config_path + ": " + e.what());
      }
      config = config_from_json(j);
    }
  } catch (const Error& e) {
    std::cerr << "acsum: " << e.what() << "\n";
    return 1;
  }
  for (const auto& [opt, apply] : overrides) {
    if (opt->count() > 0) apply(config);
  }
  config.command = app.get_subcommands().front()->get_name();
  return run(config, std::cerr);
}

}  // namespace acsum::cli
