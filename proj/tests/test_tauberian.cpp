#include <doctest.h>

#include <cmath>
#include <numbers>

#include "acsum/error.hpp"
#include "acsum/generators.hpp"
#include "acsum/tauberian.hpp"

using namespace acsum;
using namespace acsum::tauber;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an acsum::Error");
  return ErrorCode::InvalidArgument;
}

CoefficientStream stream(std::function<double(std::size_t)> a, double bound) {
  return CoefficientStream::from_function([a](std::size_t n) { return cplx(a(n), 0.0); }, bound);
}

ContinuousSignal sampled(std::function<cplx(double)> fn, double h, std::size_t count) {
  std::vector<cplx> v(count);
  for (std::size_t j = 0; j < count; ++j) v[j] = fn(static_cast<double>(j) * h);
  return ContinuousSignal(0.0, h, std::move(v));
}

bool positive(const AcVerdict& v) { return v.status == AcStatus::AlmostConvergent && v.limit.has_value(); }

}  // namespace

TEST_CASE("coefficient streams") {
  const auto a = CoefficientStream::from_values({1.0, 2.0, 3.0});
  CHECK(a.length() == 3u);
  CHECK(a.bound() == 3.0);
  CHECK(a.partial_sums(3).back() == cplx(6.0));
  CHECK(code_of([&] { a.at(3); }) == ErrorCode::InsufficientCoefficients);
  CHECK(code_of([] { CoefficientStream::from_values({2.0}, 1.0); }) == ErrorCode::InvalidArgument);

  const auto g = CoefficientStream::from_generator(Character{0.5}, 10);
  CHECK(std::abs(g.at(3) + 1.0) < 1e-15);
  const auto ps = CoefficientStream::from_generator(partial_sums_of(Character{0.5}), 10);
  CHECK(std::abs(ps.at(2) - 1.0) < 1e-15);
  CHECK(std::abs(ps.at(3)) < 1e-15);

  CHECK(bounded_below(CoefficientStream::from_values({-0.5, 3.0}), 0.5, 2));
  CHECK(!bounded_below(CoefficientStream::from_values({-0.5, {3.0, -2.0}}), 1.0, 2));
}

TEST_CASE("abel means") {
  const auto one = stream([](std::size_t) { return 1.0; }, 1.0);
  const auto s1 = abel_sweep(one, {0.5, 0.9});
  CHECK(std::abs(s1.values[1] - 1.0) <= 1e-12);
  CHECK(s1.tail_bounds[1] <= 1e-12);
  // M(x) = ceil(ln(eps/B)/ln x) terms certify the tail.
  CHECK(s1.terms[1] >= static_cast<std::size_t>(std::ceil(std::log(1e-12) / std::log(0.9))));

  const auto alt = stream([](std::size_t n) { return n % 2 == 0 ? 1.0 : -1.0; }, 1.0);
  CHECK(abel_sweep(alt, {0.9}).values[0].real() == doctest::Approx(0.1 / 1.9).epsilon(1e-10));

  const auto two = stream([](std::size_t n) { return n % 2 == 0 ? 2.0 : 0.0; }, 2.0);
  CHECK(abel_sweep(two, {0.99}).values[0].real() == doctest::Approx(1.0 + 0.01 / 1.99).epsilon(1e-10));

  CHECK(code_of([&] { abel_sweep(one, {0.9, 0.5}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { abel_sweep(CoefficientStream::from_values({1.0, 1.0}), {0.9}); }) ==
        ErrorCode::InsufficientCoefficients);

  const auto sched = abel_schedule();
  CHECK(sched.size() == 12);
  CHECK(sched.front() == 0.5);
  CHECK(sched.back() == 1.0 - std::ldexp(1.0, -12));
}

TEST_CASE("extrapolation to zero") {
  // Exact for quadratics through the last three points.
  const std::vector<double> h{0.5, 0.25, 0.125, 0.0625};
  std::vector<cplx> v;
  for (double x : h) v.push_back(3.0 - 2.0 * x + 5.0 * x * x);
  CHECK(std::abs(*extrapolate_to_zero(h, v) - 3.0) < 1e-12);
  CHECK(!extrapolate_to_zero({}, {}));
  CHECK(*extrapolate_to_zero({0.1}, {4.0}) == cplx(4.0));
}

TEST_CASE("laplace means") {
  const auto one = sampled([](double) { return cplx(1.0); }, 0.05, 40001);
  const auto s1 = laplace_sweep(one, laplace_schedule());
  for (const auto& v : s1.values) CHECK(std::abs(v - 1.0) < 1e-3);

  const auto c = sampled([](double) { return cplx(2.5); }, 0.05, 40001);
  CHECK(std::abs(*laplace_sweep(c, laplace_schedule()).extrapolated_limit - 2.5) < 1e-3);

  const auto chi = sampled([](double t) { return std::polar(1.0, 2.0 * std::numbers::pi * t); }, 0.005, 40001);
  const double expect = std::abs(0.1 / cplx(0.1, -2.0 * std::numbers::pi));
  CHECK(std::abs(laplace_sweep(chi, {0.1}).values[0]) == doctest::Approx(expect).epsilon(1e-3));

  // Range too short for the smallest abscissa.
  const auto short_one = sampled([](double) { return cplx(1.0); }, 0.05, 2001);
  CHECK(code_of([&] { laplace_sweep(short_one, laplace_schedule()); }) == ErrorCode::TailNotControlled);
  const ContinuousSignal shifted(1.0, 0.05, std::vector<cplx>(100, 1.0));
  CHECK(code_of([&] { laplace_sweep(shifted, {0.5}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("residues against the one-sided cesaro limit") {
  const auto one = stream([](std::size_t) { return 1.0; }, 1.0);
  const auto r1 = residue_oac_estimate(one, abel_schedule());
  CHECK(std::abs(r1.alpha - 1.0) < 1e-3);
  REQUIRE(r1.agreement);
  CHECK(*r1.agreement < 1e-3);

  const auto half = stream([](std::size_t n) { return n % 2 == 0 ? 1.0 : 0.0; }, 1.0);
  CHECK(std::abs(residue_oac_estimate(half, abel_schedule()).alpha - 0.5) < 1e-3);

  const auto two = stream([](std::size_t n) { return n % 2 == 0 ? 2.0 : 0.0; }, 2.0);
  CHECK(std::abs(residue_oac_estimate(two, abel_schedule()).alpha - 1.0) < 1e-3);
}

TEST_CASE("fatou") {
  const auto geo = stream([](std::size_t n) { return std::ldexp(1.0, -static_cast<int>(n)); }, 1.0);
  const auto r1 = fatou_check(geo, 2.0, 1e-6);
  CHECK(r1.pass);
  CHECK(r1.partial_error <= 1e-6);

  const auto d = stream([](std::size_t n) { return (n + 1.0) * std::ldexp(1.0, -static_cast<int>(n)); }, 1.0);
  CHECK(fatou_check(d, 4.0, 1e-6).pass);

  const auto single = stream([](std::size_t n) { return n == 0 ? 0.75 : 0.0; }, 0.75);
  const auto r3 = fatou_check(single, 0.75, 1e-12);
  CHECK(r3.pass);
  CHECK(r3.partial_error == 0.0);

  // Wrong declared sum fails without throwing.
  CHECK(!fatou_check(geo, 2.1, 1e-6).pass);

  const auto flat = stream([](std::size_t) { return 1.0; }, 1.0);
  CHECK(code_of([&] { fatou_check(flat, 0.0, 1e-6); }) == ErrorCode::HypothesisViolated);
}

TEST_CASE("weak star limits") {
  std::vector<std::int64_t> shifts;
  for (std::int64_t s = 100; s <= 2000; s += 47) shifts.push_back(s);
  const auto k = spectral::Kernel::geometric(0.5);

  const auto c = render_discrete(TrigPoly{{{1.5, 0.0}}}, -4096, 4096);
  const auto v1 = weak_star_verdict(c, k, shifts, 1e-2);
  CHECK(positive(v1));
  CHECK(std::abs(*v1.limit - 1.5) < 1e-12);

  const auto chi = render_discrete(Character{0.2}, -4096, 4096);
  CHECK(!positive(weak_star_verdict(chi, k, shifts, 1e-2)));

  const auto bump = render_discrete(Convergent{{2.0, 0.0}, {1.0, 0.0}, 1.0}, -4096, 4096);
  const auto v3 = weak_star_verdict(bump, k, shifts, 1e-2);
  CHECK(positive(v3));
  CHECK(std::abs(*v3.limit - 2.0) < 1e-2);

  CHECK(code_of([&] { weak_star_verdict(c, spectral::Kernel{0, {0.5, 0.5}}, shifts, 1e-2); }) ==
        ErrorCode::KernelVanishes);
  CHECK(code_of([&] { weak_star_verdict(c, k, {1, 2, 3}, 1e-2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("oscillation modulus") {
  const auto c = render_discrete(TrigPoly{{{1.0, 0.0}}}, -100, 100);
  CHECK(oscillation_modulus(c, 1.0, 10.0) == 0.0);

  const auto chi = render_discrete(Character{0.1}, -100, 100);
  CHECK(oscillation_modulus(chi, 1.0, 10.0) == doctest::Approx(2.0 * std::sin(0.1 * std::numbers::pi)));

  const auto e = sampled([](double x) { return cplx(std::exp(-x)); }, 0.01, 3001);
  CHECK(oscillation_modulus(e, 1.0, 10.0) <= std::exp(-10.0));

  CHECK(code_of([&] { oscillation_modulus(c, 1.0, 1000.0); }) == ErrorCode::RangeTooShort);
}

TEST_CASE("chain reports") {
  const auto bump = render_discrete(Convergent{{2.0, 0.0}, {1.0, 0.0}, 1.0}, -(1 << 13), 1 << 13);
  const auto r1 = chain_report(bump);
  CHECK(r1.consistency);
  for (const auto* v : {&r1.c_verdict, &r1.wstar_verdict, &r1.ac_verdict}) {
    REQUIRE(positive(*v));
    CHECK(std::abs(*v->limit - 2.0) < 1e-2);
  }

  // At k = 512 the 1025-sample window cancels Character{0.2} exactly, so
  // the gap sequence is not monotone and the verdict stays open.
  const auto r_fifth = chain_report(render_discrete(Character{0.2}, -(1 << 13), 1 << 13));
  CHECK(r_fifth.consistency);
  CHECK(!positive(r_fifth.c_verdict));
  CHECK(r_fifth.ac_verdict.status == AcStatus::Inconclusive);

  const auto chi = render_discrete(Character{0.3}, -(1 << 13), 1 << 13);
  const auto r2 = chain_report(chi);
  CHECK(r2.consistency);
  CHECK(!positive(r2.c_verdict));
  CHECK(!positive(r2.wstar_verdict));
  REQUIRE(positive(r2.ac_verdict));
  CHECK(std::abs(*r2.ac_verdict.limit) < 1e-2);
  bool all_decay = true;
  for (const auto& d : r2.difference_decay) all_decay = all_decay && d.decays;
  CHECK(!all_decay);

  const auto blocks = render_discrete(BlockSequence{}, 0, 1 << 16);
  const auto r3 = chain_report(blocks);
  CHECK(r3.consistency);
  CHECK(r3.c_verdict.status == AcStatus::NotAlmostConvergent);
  CHECK(!positive(r3.wstar_verdict));
  CHECK(r3.ac_verdict.status == AcStatus::NotAlmostConvergent);

  const auto cont = render_continuous(Convergent{{2.0, 0.0}, {1.0, 0.0}, 1.0}, -4000.0, 0.25, 32001);
  const auto r4 = chain_report(cont);
  CHECK(r4.consistency);
  CHECK(positive(r4.ac_verdict));

  CHECK(code_of([] { chain_report(render_discrete(Character{0.1}, 0, 10)); }) == ErrorCode::RangeTooShort);
}

TEST_CASE("primitive almost convergence") {
  const auto e = sampled([](double t) { return cplx(std::exp(-t)); }, 0.1, 30001);
  const auto r1 = primitive_oac_check(e, 1.0, 1e-2);
  CHECK(r1.pass);
  CHECK(r1.tail_decays);
  REQUIRE(r1.primitive_error);
  CHECK(*r1.primitive_error < 1e-2);

  const auto zero = sampled([](double) { return cplx(0.0); }, 0.1, 30001);
  const auto r2 = primitive_oac_check(zero, 0.0, 1e-2);
  CHECK(r2.pass);
  CHECK(r2.limit_error == 0.0);

  const auto e2 = sampled([](double t) { return cplx(2.0 * std::exp(-2.0 * t)); }, 0.1, 30001);
  CHECK(primitive_oac_check(e2, 1.0, 1e-2).pass);
  CHECK(!primitive_oac_check(e2, 1.5, 1e-2).pass);

  const auto blocks = render_continuous(BlockSequence{{1.0, -1.0}, 2}, 0.0, 0.1, 30001);
  CHECK(code_of([&] { primitive_oac_check(blocks, 0.0, 1e-2); }) == ErrorCode::HypothesisViolated);
}
