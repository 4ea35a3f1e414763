// Acceptance run: one line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "acsum/cesaro.hpp"
#include "acsum/cyclic.hpp"
#include "acsum/generators.hpp"
#include "acsum/spectral.hpp"
#include "acsum/tauberian.hpp"
#include "corpus.hpp"
#include "oracles.hpp"

using namespace acsum;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

bool is_ac(const AcVerdict& v) { return v.status == AcStatus::AlmostConvergent && v.limit; }

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome alternating() {
  const auto s = render_discrete(Character{0.5}, 0, 1 << 16);
  const auto sweep = cesaro::cesaro_sweep(s, WindowSchedule::geometric(2, 1024, 2, Sidedness::OneSided));
  const auto v = cesaro::ac_verdict(sweep, 1e-12);
  const bool ok = is_ac(v) && std::abs(*v.limit) <= 1e-12 && v.uncertainty <= 1e-12;
  return {ok, fmt("status=%s |limit|=%.3g uncertainty=%.3g", std::string(to_string(v.status)).c_str(),
                  v.limit ? std::abs(*v.limit) : -1.0, v.uncertainty)};
}

Outcome blocks() {
  const auto s = render_discrete(BlockSequence{}, 0, 1 << 20);
  const auto sweep = cesaro::cesaro_sweep(s, WindowSchedule::geometric(2, 256, 2, Sidedness::TwoSided));
  const auto v = cesaro::ac_verdict(sweep, 1e-2);
  const double gap = v.witness ? v.witness->gap : 0.0;
  const bool ok = v.status == AcStatus::NotAlmostConvergent && gap >= 0.98;
  return {ok, fmt("status=%s witness gap=%.6f p_bar=%.4f p_lower=%.4f",
                  std::string(to_string(v.status)).c_str(), gap, sweep.p_bar.real(),
                  sweep.p_lower.real())};
}

// Cesaro and spectral routes on one discrete signal.
Outcome both_routes(const DiscreteSignal& s, cplx expected, double tol, double k_max) {
  const auto sweep = cesaro::cesaro_sweep(s, WindowSchedule::geometric(2, k_max, 2, Sidedness::TwoSided));
  const auto vc = cesaro::ac_verdict(sweep, tol);
  const auto vs = spectral::spectral_ac_verdict(s, {0.05, 0.02, 0.01}, tol);
  if (!is_ac(vc) || !is_ac(vs)) {
    return {false, fmt("cesaro=%s spectral=%s", std::string(to_string(vc.status)).c_str(),
                       std::string(to_string(vs.status)).c_str())};
  }
  const double ec = std::abs(*vc.limit - expected);
  const double es = std::abs(*vs.limit - expected);
  const double dis = std::abs(*vc.limit - *vs.limit);
  return {ec <= tol && es <= tol && dis <= tol,
          fmt("cesaro err=%.3g spectral err=%.3g disagreement=%.3g", ec, es, dis)};
}

Outcome character_1_7() {
  return both_routes(render_discrete(Character{1.0 / 7.0}, -(1 << 14), 1 << 14), 0.0, 1e-2, 4096);
}

Outcome measure_atoms() {
  const MeasureTransform m{{{0.0, {0.3, 0.0}}, {0.2, {0.35, 0.0}}, {-0.2, {0.35, 0.0}}}, {}};
  return both_routes(render_discrete(m, -(1 << 14), 1 << 14), 0.3, 1e-2, 4096);
}

Outcome dirichlet() {
  const DirichletLine d{{{1, 0}, {1, 0}, {1, 0}}, 2.0, 1.0};
  const auto s = render_continuous(d, 0.0, 0.05, 81921);
  const auto sweep = cesaro::cesaro_sweep(s, WindowSchedule::geometric(2, 1024, 2, Sidedness::TwoSided));
  const auto v = cesaro::ac_verdict(sweep, 1e-2);
  const double err = v.limit ? std::abs(*v.limit - 1.0) : -1.0;
  return {is_ac(v) && err <= 1e-2, fmt("status=%s |limit-1|=%.3g", std::string(to_string(v.status)).c_str(), err)};
}

Outcome cyclic_suite() {
  std::string detail;
  bool ok = true;
  for (std::size_t n : {8, 64, 256, 1024}) {
    const auto r = cyclic::run_suite(n, 100, 20240601);
    ok = ok && r.all_pass() && r.max_roundtrip_error <= 1e-12;
    detail += fmt("N=%zu roundtrip=%.2g fails=%zu; ", n, r.max_roundtrip_error, r.failures.size());
    if (!r.failures.empty()) detail += r.failures.front() + "; ";
  }
  return {ok, detail};
}

Outcome residue() {
  auto a = tauber::CoefficientStream::from_function(
      [](std::size_t n) { return cplx(n % 2 == 0 ? 1.0 : 0.0, 0.0); }, 1.0);
  const auto r = tauber::residue_oac_estimate(a, tauber::abel_schedule());
  const double ea = std::abs(r.alpha - 0.5);
  const double ec = r.cesaro.limit ? std::abs(*r.cesaro.limit - 0.5) : -1.0;
  return {is_ac(r.cesaro) && ea <= 1e-3 && ec <= 1e-3, fmt("|alpha-0.5|=%.3g |oac-0.5|=%.3g", ea, ec)};
}

Outcome fatou() {
  auto a = tauber::CoefficientStream::from_function(
      [](std::size_t n) { return cplx((n + 1.0) * std::ldexp(1.0, -static_cast<int>(n)), 0.0); }, 1.0);
  const auto r = tauber::fatou_check(a, 4.0, 1e-6);
  return {r.pass && r.partial_error <= 1e-6 && r.oac_error <= 1e-3,
          fmt("|s_64-4|=%.3g oac err=%.3g increment tail=%.3g", r.partial_error, r.oac_error,
              r.increment_tail)};
}

Outcome convolution_residual() {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto kernel = spectral::Kernel::fejer(64);
  const auto schedule = WindowSchedule::geometric(16, 4096, 2, Sidedness::TwoSided);
  std::vector<double> residuals;
  double oracle_err = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<cplx> v(1 << 14);
    for (auto& x : v) x = std::polar(std::sqrt(u(rng)), 2.0 * std::numbers::pi * u(rng));
    const DiscreteSignal s(0, v, 1.0);
    const double r = cesaro::convolution_invariance_residual(s, kernel, schedule);
    residuals.push_back(r);
    if (trial < 3) oracle_err = std::max(oracle_err, std::abs(r - oracles::invariance_residual(s, kernel, 4096)));
  }
  std::vector<double> sorted = residuals;
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[24] + sorted[25]);
  const double worst = sorted.back();
  return {worst <= 0.1 && median <= 0.03 && oracle_err <= 1e-10,
          fmt("max=%.4f median=%.4f oracle diff=%.2g", worst, median, oracle_err)};
}

Outcome hardy_littlewood() {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> period(2, 12);
  double worst = 0.0;
  int positive = 0;
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> pattern(period(rng));
    for (auto& p : pattern) p = 2.0 * u(rng) - 0.5;
    auto a = tauber::CoefficientStream::from_function(
        [pattern](std::size_t n) { return cplx(pattern[n % pattern.size()], 0.0); }, 1.5);
    if (!tauber::bounded_below(a, 0.5, 1 << 16)) return {false, "stream not bounded below"};
    tauber::OacConfig oc;
    oc.tol = 1e-2;
    const auto vc = tauber::oac_verdict(a.take(oc.length), oc);
    if (!is_ac(vc)) continue;
    ++positive;
    const auto sweep = tauber::abel_sweep(a, tauber::abel_schedule());
    worst = std::max(worst, std::abs(*sweep.extrapolated_limit - *vc.limit));
  }
  const std::vector<GeneratorSpec> functions{
      Convergent{{1.0, 0.0}, {1.0, 0.0}, 0.5},
      TrigPoly{{{{1.0, 0.0}, 0.0}, {{1.0, 0.0}, 0.25}}},
      MeasureTransform{{{0.0, {0.5, 0.0}}, {0.3, {0.25, 0.0}}, {-0.3, {0.25, 0.0}}}, {}},
      DirichletLine{{{1, 0}, {1, 0}, {1, 0}}, 2.0, 1.0},
      Character{0.1}};
  double worst_c = 0.0;
  int positive_c = 0;
  for (const auto& g : functions) {
    const auto psi = render_continuous(g, 0.0, 0.05, 81921);
    if (!tauber::bounded_below(psi, 2.0)) return {false, "function not bounded below"};
    const auto sweep = cesaro::cesaro_sweep(psi, WindowSchedule::geometric(2, 1024, 2, Sidedness::OneSided));
    const auto vc = cesaro::ac_verdict(sweep, 1e-2);
    if (!is_ac(vc)) continue;
    ++positive_c;
    const auto lap = tauber::laplace_sweep(psi, tauber::laplace_schedule());
    worst_c = std::max(worst_c, std::abs(*lap.extrapolated_limit - *vc.limit));
  }
  return {positive == 20 && positive_c == 5 && worst <= 1e-2 && worst_c <= 1e-2,
          fmt("discrete %d/20 worst=%.3g; continuous %d/5 worst=%.3g", positive, worst, positive_c,
              worst_c)};
}

Outcome chain() {
  int total = 0;
  int consistent = 0;
  std::string bad;
  for (const auto& e : testing::generator_corpus()) {
    const std::vector<std::pair<std::string, std::function<tauber::ChainReport()>>> runs{
        {"z", [&] { return tauber::chain_report(render_discrete(e.spec, -testing::kCorpusHalfSpan, testing::kCorpusHalfSpan)); }},
        {"n", [&] { return tauber::chain_report(render_discrete(e.spec, 0, 2 * testing::kCorpusHalfSpan)); }},
        {"r", [&] { return tauber::chain_report(render_continuous(e.spec, 0.0, testing::kCorpusStep, testing::kCorpusSamples)); }}};
    for (const auto& [tag, fn] : runs) {
      if (tag == "r" && !aliasing_ok(e.spec, testing::kCorpusStep)) continue;
      ++total;
      const auto r = fn();
      if (r.consistency) {
        ++consistent;
      } else {
        bad += e.name + "/" + tag + " ";
      }
    }
  }
  return {consistent == total, fmt("%d/%d consistent %s", consistent, total, bad.c_str())};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"alternating one-sided exact cancellation", alternating},
      {"block sequence not almost convergent", blocks},
      {"character 1/7 cesaro vs spectral", character_1_7},
      {"measure transform limit is the atom at 0", measure_atoms},
      {"dirichlet line limit is a_1", dirichlet},
      {"cyclic group suite", cyclic_suite},
      {"residue vs one-sided cesaro", residue},
      {"fatou partial sums", fatou},
      {"convolution invariance residual", convolution_residual},
      {"abel/laplace vs cesaro consistency", hardy_littlewood},
      {"chain monotonicity over corpus", chain},
  };
  const double budget[] = {2.0, 10.0, 0, 0, 0, 30.0, 0, 0, 0, 0, 0};
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (budget[i] > 0 && secs >= budget[i]) {
      o.pass = false;
      o.detail += fmt(" (over %.0f s budget)", budget[i]);
    }
    if (!o.pass) ++failed;
    std::printf("%s %2zu %-44s %7.2fs  %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                secs, o.detail.c_str());
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
