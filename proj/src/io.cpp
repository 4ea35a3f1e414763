#include "acsum/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "acsum/error.hpp"

namespace acsum::io {

namespace {

[[noreturn]] void config_error(const std::string& what) {
  throw Error(ErrorCode::ConfigError, what);
}

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) config_error(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

double number(const json& j, const char* what) {
  if (!j.is_number()) config_error(std::string(what) + " must be a number");
  return j.get<double>();
}

double number_or(const json& j, const char* key, double fallback) {
  return j.contains(key) ? number(j.at(key), key) : fallback;
}

std::vector<cplx> complex_list(const json& j, const char* what) {
  if (!j.is_array()) config_error(std::string(what) + " must be an array");
  std::vector<cplx> out;
  for (const auto& v : j) out.push_back(complex_from_json(v));
  return out;
}

json complex_array(std::span<const cplx> v) {
  json a = json::array();
  for (const auto& z : v) a.push_back(to_json(z));
  return a;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string csv_row(const std::string& a, cplx z) {
  return a + "," + format_number(z.real()) + "," + format_number(z.imag()) + "\n";
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

double parse_double(const std::string& s, std::size_t row) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    while (used < s.size() && std::isspace(static_cast<unsigned char>(s[used]))) ++used;
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    config_error("CSV row " + std::to_string(row) + ": cannot parse \"" + s + "\"");
  }
}

bool is_header(const std::vector<std::string>& cells) {
  if (cells.empty()) return false;
  try {
    std::size_t used = 0;
    (void)std::stod(cells[0], &used);
    return false;
  } catch (const std::exception&) {
    return true;
  }
}

}  // namespace

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  config_error("complex value must be a number or [re, im], got " + j.dump());
}

json to_json(const GeneratorSpec& spec) {
  return std::visit(
      overloaded{
          [](const Character& c) { return json{{"kind", "character"}, {"freq", c.freq}}; },
          [](const TrigPoly& p) {
            json terms = json::array();
            for (const auto& t : p.terms) {
              terms.push_back({{"coeff", to_json(t.coeff)}, {"freq", t.freq}});
            }
            return json{{"kind", "trig_poly"}, {"terms", terms}};
          },
          [](const DirichletLine& d) {
            return json{{"kind", "dirichlet_line"},
                        {"coeffs", complex_array(d.coeffs)},
                        {"sigma", d.sigma},
                        {"abscissa", d.abscissa}};
          },
          [](const MeasureTransform& m) {
            json atoms = json::array();
            for (const auto& a : m.atoms) {
              atoms.push_back({{"freq", a.freq}, {"weight", to_json(a.weight)}});
            }
            json j{{"kind", "measure_transform"}, {"atoms", atoms}};
            if (m.density) {
              j["density"] = {{"lo", m.density->lo},
                              {"hi", m.density->hi},
                              {"values", complex_array(m.density->values)}};
            }
            return j;
          },
          [](const BlockSequence& b) {
            return json{{"kind", "block_sequence"}, {"symbols", b.symbols}, {"base", b.base}};
          },
          [](const PartialSums& p) {
            json j{{"kind", "partial_sums"}};
            if (p.inner) j["inner"] = to_json(*p.inner);
            return j;
          },
          [](const Convergent& c) {
            return json{{"kind", "convergent"},
                        {"limit", to_json(c.limit)},
                        {"amplitude", to_json(c.amplitude)},
                        {"rate", c.rate},
                        {"profile", c.profile == DecayProfile::Exponential ? "exponential"
                                                                           : "algebraic"}};
          },
          [](const Custom& c) {
            return json{{"kind", "custom"},
                        {"origin", c.origin},
                        {"step", c.step},
                        {"values", complex_array(c.values)}};
          },
      },
      spec);
}

GeneratorSpec generator_from_json(const json& j) {
  const auto& kind_field = field(j, "kind");
  if (!kind_field.is_string()) config_error("\"kind\" must be a string");
  const auto kind = kind_field.get<std::string>();

  if (kind == "character") return Character{number(field(j, "freq"), "freq")};
  if (kind == "trig_poly") {
    TrigPoly p;
    const auto& terms = field(j, "terms");
    if (!terms.is_array()) config_error("terms must be an array");
    for (const auto& t : terms) {
      p.terms.push_back({complex_from_json(field(t, "coeff")), number(field(t, "freq"), "freq")});
    }
    return p;
  }
  if (kind == "dirichlet_line") {
    DirichletLine d;
    d.coeffs = complex_list(field(j, "coeffs"), "coeffs");
    d.sigma = number_or(j, "sigma", d.sigma);
    d.abscissa = number_or(j, "abscissa", d.abscissa);
    return d;
  }
  if (kind == "measure_transform") {
    MeasureTransform m;
    if (j.contains("atoms")) {
      if (!j["atoms"].is_array()) config_error("atoms must be an array");
      for (const auto& a : j["atoms"]) {
        m.atoms.push_back({number(field(a, "freq"), "freq"), complex_from_json(field(a, "weight"))});
      }
    }
    if (j.contains("density")) {
      const auto& d = j["density"];
      m.density = SampledDensity{number(field(d, "lo"), "lo"), number(field(d, "hi"), "hi"),
                                 complex_list(field(d, "values"), "values")};
    }
    return m;
  }
  if (kind == "block_sequence") {
    BlockSequence b;
    if (j.contains("symbols")) {
      b.symbols.clear();
      if (!j["symbols"].is_array()) config_error("symbols must be an array");
      for (const auto& s : j["symbols"]) b.symbols.push_back(number(s, "symbol"));
    }
    if (j.contains("base")) {
      const double base = number(j["base"], "base");
      if (base < 2 || base != std::floor(base)) config_error("base must be an integer >= 2");
      b.base = static_cast<std::uint32_t>(base);
    }
    return b;
  }
  if (kind == "partial_sums") return partial_sums_of(generator_from_json(field(j, "inner")));
  if (kind == "convergent") {
    Convergent c;
    c.limit = complex_from_json(field(j, "limit"));
    if (j.contains("amplitude")) c.amplitude = complex_from_json(j["amplitude"]);
    c.rate = number_or(j, "rate", c.rate);
    if (j.contains("profile")) {
      const auto p = j["profile"].is_string() ? j["profile"].get<std::string>() : "";
      if (p == "exponential") {
        c.profile = DecayProfile::Exponential;
      } else if (p == "algebraic") {
        c.profile = DecayProfile::Algebraic;
      } else {
        config_error("profile must be \"exponential\" or \"algebraic\"");
      }
    }
    return c;
  }
  if (kind == "custom") {
    Custom c;
    c.origin = number_or(j, "origin", c.origin);
    c.step = number_or(j, "step", c.step);
    c.values = complex_list(field(j, "values"), "values");
    return c;
  }
  config_error("unknown generator kind \"" + kind + "\"");
}

json to_json(const AcVerdict& v) {
  json j{{"status", std::string(to_string(v.status))}, {"uncertainty", v.uncertainty}};
  j["limit"] = v.limit ? to_json(*v.limit) : json(nullptr);
  if (v.witness) {
    j["witness"] = {{"window", v.witness->window},
                    {"shift_high", v.witness->shift_high},
                    {"shift_low", v.witness->shift_low},
                    {"gap", v.witness->gap}};
  } else {
    j["witness"] = nullptr;
  }
  j["notes"] = v.notes;
  return j;
}

json to_json(const cesaro::CesaroSweep& sweep) {
  json windows = json::array();
  for (const auto& w : sweep.windows) {
    windows.push_back({{"k", w.length},
                       {"sup", to_json(w.sup)},
                       {"inf", to_json(w.inf)},
                       {"argmax_re", w.argmax_re},
                       {"argmin_re", w.argmin_re},
                       {"argmax_im", w.argmax_im},
                       {"argmin_im", w.argmin_im},
                       {"shifts", w.shift_count},
                       {"gap", w.gap()}});
  }
  return {{"sidedness", sweep.sidedness == Sidedness::TwoSided ? "two_sided" : "one_sided"},
          {"continuous", sweep.continuous},
          {"shift_stride", sweep.shift_stride},
          {"p_bar", to_json(sweep.p_bar)},
          {"p_lower", to_json(sweep.p_lower)},
          {"gap_nonincreasing", sweep.gap_nonincreasing},
          {"grid_relative", sweep.grid_relative},
          {"windows", windows}};
}

json to_json(const spectral::SpectrumEstimate& est) {
  json masked = json::array();
  for (std::size_t i = 0; i < est.freqs.size(); ++i) {
    if (est.support_mask[i]) masked.push_back(est.freqs[i]);
  }
  return {{"taper", est.taper == spectral::Taper::Hann ? "hann" : "rectangular"},
          {"window_length", est.window_length},
          {"step", est.step},
          {"resolution", est.resolution()},
          {"mask_threshold", est.mask_threshold},
          {"parseval_rel_error", est.parseval_rel_error},
          {"masked_freqs", masked}};
}

json to_json(const spectral::SupportReport& r) {
  return {{"pass", r.pass},
          {"max_offset", r.max_offset},
          {"leakage_distance", r.leakage_distance},
          {"masked_freqs", r.masked_freqs},
          {"violations", r.violations},
          {"notes", r.notes}};
}

json to_json(const tauber::MeanSweep& sweep) {
  json points = json::array();
  for (std::size_t i = 0; i < sweep.abscissas.size(); ++i) {
    points.push_back({{"x", sweep.abscissas[i]},
                      {"value", to_json(sweep.values[i])},
                      {"tail_bound", sweep.tail_bounds[i]},
                      {"terms", sweep.terms[i]}});
  }
  json j{{"method", sweep.method == tauber::MeanMethod::Abel ? "abel" : "laplace"},
         {"points", points}};
  j["extrapolated_limit"] =
      sweep.extrapolated_limit ? to_json(*sweep.extrapolated_limit) : json(nullptr);
  return j;
}

json to_json(const tauber::ResidueEstimate& r) {
  json j{{"alpha", to_json(r.alpha)}, {"sweep", to_json(r.sweep)}, {"cesaro", to_json(r.cesaro)}};
  j["agreement"] = r.agreement ? json(*r.agreement) : json(nullptr);
  return j;
}

json to_json(const tauber::FatouReport& r) {
  return {{"partial_index", r.partial_index},
          {"partial_sum", to_json(r.partial_sum)},
          {"partial_error", r.partial_error},
          {"oac", to_json(r.oac)},
          {"oac_error", r.oac_error},
          {"increment_tail", r.increment_tail},
          {"pass", r.pass}};
}

json to_json(const tauber::ChainReport& r) {
  json decay = json::array();
  for (const auto& d : r.difference_decay) {
    decay.push_back({{"shift", d.shift}, {"decays", d.decays}, {"verdict", to_json(d.verdict)}});
  }
  return {{"c", to_json(r.c_verdict)},
          {"wstar", to_json(r.wstar_verdict)},
          {"ac", to_json(r.ac_verdict)},
          {"difference_decay", decay},
          {"oscillation_modulus", r.oscillation_modulus},
          {"consistency", r.consistency},
          {"violations", r.violations}};
}

json to_json(const tauber::PrimitiveReport& r) {
  json j{{"oac", to_json(r.oac)},
         {"limit_error", r.limit_error},
         {"tail_decays", r.tail_decays},
         {"pass", r.pass}};
  j["primitive_error"] = r.primitive_error ? json(*r.primitive_error) : json(nullptr);
  return j;
}

json to_json(const cyclic::SuiteReport& r) {
  return {{"N", r.order},
          {"cases", r.cases},
          {"seed", r.seed},
          {"max_roundtrip_error", r.max_roundtrip_error},
          {"max_convolution_error", r.max_convolution_error},
          {"roundtrip_pass", r.roundtrip_pass},
          {"convolution_pass", r.convolution_pass},
          {"character_spectrum_pass", r.character_spectrum_pass},
          {"invariant_mean_pass", r.invariant_mean_pass},
          {"mean_annihilator_pass", r.mean_annihilator_pass},
          {"duality_pass", r.duality_pass},
          {"ideal_correspondence_pass", r.ideal_correspondence_pass},
          {"failures", r.failures},
          {"all_pass", r.all_pass()}};
}

json report(const std::string& kind, json body) {
  json j{{"schema", "v1"}, {"kind", kind}};
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string format_number(double x) {
  if (x == 0.0) return "0";
  char buf[40];
  for (int precision : {15, 16, 17}) {
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    if (std::strtod(buf, nullptr) == x) break;
  }
  return buf;
}

std::string signal_csv(const DiscreteSignal& s) {
  std::string out = "index,re,im\n";
  const auto v = s.values();
  for (std::size_t i = 0; i < v.size(); ++i) {
    out += csv_row(std::to_string(s.n_min() + static_cast<std::int64_t>(i)), v[i]);
  }
  return out;
}

std::string signal_csv(const ContinuousSignal& s) {
  std::string out = "x,re,im\n";
  const auto v = s.samples();
  for (std::size_t i = 0; i < v.size(); ++i) out += csv_row(format_number(s.x(i)), v[i]);
  return out;
}

SampleTable parse_signal_csv(const std::string& text) {
  auto rows = csv_rows(text);
  if (!rows.empty() && is_header(rows.front())) rows.erase(rows.begin());
  if (rows.empty()) config_error("signal CSV has no data rows");
  SampleTable t;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto& cells = rows[r];
    if (cells.size() != 2 && cells.size() != 3) {
      config_error("CSV row " + std::to_string(r + 1) + ": expected position,re[,im]");
    }
    const double pos = parse_double(cells[0], r + 1);
    const double re = parse_double(cells[1], r + 1);
    const double im = cells.size() == 3 ? parse_double(cells[2], r + 1) : 0.0;
    if (pos != std::floor(pos)) t.integer_index = false;
    t.positions.push_back(pos);
    t.values.emplace_back(re, im);
  }
  return t;
}

DiscreteSignal discrete_from_csv(const std::string& text, Extension extension) {
  const auto t = parse_signal_csv(text);
  for (std::size_t i = 0; i < t.positions.size(); ++i) {
    if (t.positions[i] != t.positions[0] + static_cast<double>(i)) {
      config_error("discrete CSV indices must be consecutive integers");
    }
  }
  try {
    return DiscreteSignal(static_cast<std::int64_t>(t.positions[0]), t.values, std::nullopt,
                          extension);
  } catch (const Error& e) {
    config_error(e.what());
  }
}

ContinuousSignal continuous_from_csv(const std::string& text, Extension extension) {
  const auto t = parse_signal_csv(text);
  if (t.positions.size() < 2) config_error("continuous CSV needs at least 2 rows");
  const double x0 = t.positions.front();
  const double h = (t.positions.back() - x0) / static_cast<double>(t.positions.size() - 1);
  for (std::size_t i = 0; i < t.positions.size(); ++i) {
    if (std::abs(t.positions[i] - (x0 + h * static_cast<double>(i))) > 1e-9 * std::max(1.0, std::abs(h))) {
      config_error("continuous CSV positions must be equally spaced");
    }
  }
  try {
    return ContinuousSignal(x0, h, t.values, std::nullopt, extension);
  } catch (const Error& e) {
    config_error(e.what());
  }
}

std::string sweep_csv(const cesaro::CesaroSweep& sweep) {
  std::string out = "k,sup_re,sup_im,inf_re,inf_im,argmax,argmin\n";
  for (const auto& w : sweep.windows) {
    out += format_number(w.length) + "," + format_number(w.sup.real()) + "," +
           format_number(w.sup.imag()) + "," + format_number(w.inf.real()) + "," +
           format_number(w.inf.imag()) + "," + format_number(w.argmax_re) + "," +
           format_number(w.argmin_re) + "\n";
  }
  return out;
}

std::string spectrum_csv(const spectral::SpectrumEstimate& est) {
  std::string out = "freq,magnitude,masked\n";
  for (std::size_t i = 0; i < est.freqs.size(); ++i) {
    out += format_number(est.freqs[i]) + "," + format_number(est.magnitudes[i]) + "," +
           (est.support_mask[i] ? "1" : "0") + "\n";
  }
  return out;
}

std::string mean_sweep_csv(const tauber::MeanSweep& sweep) {
  std::string out = "abscissa,re,im\n";
  for (std::size_t i = 0; i < sweep.abscissas.size(); ++i) {
    out += csv_row(format_number(sweep.abscissas[i]), sweep.values[i]);
  }
  return out;
}

std::string cyclic_csv(const cyclic::CyclicFunction& f) {
  std::string out = "index,re,im\n";
  for (std::size_t i = 0; i < f.order(); ++i) out += csv_row(std::to_string(i), f.values[i]);
  return out;
}

cyclic::CyclicFunction cyclic_from_csv(const std::string& text) {
  const auto t = parse_signal_csv(text);
  for (std::size_t i = 0; i < t.positions.size(); ++i) {
    if (t.positions[i] != static_cast<double>(i)) {
      config_error("cyclic CSV indices must run 0..N-1");
    }
  }
  return {t.values};
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) config_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) config_error("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) config_error("write failed for " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    config_error("cannot rename into " + path.string());
  }
}

}  // namespace acsum::io
