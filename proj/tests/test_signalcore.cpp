#include <doctest.h>

#include <cmath>
#include <numbers>

#include "acsum/error.hpp"
#include "acsum/generators.hpp"

using namespace acsum;

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

std::vector<cplx> values(const DiscreteSignal& s) { return {s.values().begin(), s.values().end()}; }

}  // namespace

TEST_CASE("closed-form evaluation") {
  CHECK(std::abs(evaluate(Character{0.0}, 3.7) - cplx(1.0)) < 1e-15);
  CHECK(std::abs(evaluate(Character{0.25}, 1.0) - cplx(0.0, 1.0)) < 1e-15);
  CHECK(std::abs(evaluate(DirichletLine{{1.0, 1.0}, 2.0, 1.0}, 0.0) - cplx(1.25)) < 1e-15);

  // a_n n^-sigma e^{-i t log n}
  const DirichletLine d{{1.0, {0.0, 2.0}, 0.5}, 2.5, 1.0};
  const double t = 1.3;
  cplx expect{};
  for (int n = 1; n <= 3; ++n) {
    expect += d.coeffs[n - 1] * std::pow(n, -2.5) * std::polar(1.0, -t * std::log(n));
  }
  CHECK(std::abs(evaluate(d, t) - expect) < 1e-14);

  const Convergent e{{2.0, 0.0}, {1.0, 0.0}, 1.0};
  CHECK(std::abs(evaluate(e, -1.5) - (2.0 + std::exp(-1.5))) < 1e-15);
  const Convergent a{{0.0, 0.0}, {1.0, 0.0}, 2.0, DecayProfile::Algebraic};
  CHECK(std::abs(evaluate(a, 3.0) - 1.0 / 16.0) < 1e-15);
}

TEST_CASE("preconditions on evaluation") {
  CHECK(code_of([] { evaluate(Custom{0.0, 1.0, {1.0, 2.0}}, 0.0); }) == ErrorCode::UnsupportedPoint);
  CHECK(code_of([] { evaluate(DirichletLine{{1.0}, 1.0, 1.0}, 0.0); }) == ErrorCode::DivergentSeries);
  CHECK(code_of([] { render_discrete(DirichletLine{{1.0}, 0.5, 1.0}, 0, 3); }) ==
        ErrorCode::DivergentSeries);
  CHECK(code_of([] { render_discrete(Character{0.1}, 3, 2); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { render_continuous(Character{0.1}, 0.0, 0.0, 4); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("discrete renderings") {
  const auto alt = values(render_discrete(Character{0.5}, 0, 3));
  const std::vector<cplx> expect_alt{1.0, -1.0, 1.0, -1.0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(alt[i] - expect_alt[i]) < 1e-15);

  const auto blocks = values(render_discrete(BlockSequence{}, 0, 6));
  const std::vector<double> expect_blocks{0, 1, 1, 0, 0, 0, 0};
  for (std::size_t i = 0; i < 7; ++i) CHECK(blocks[i] == cplx(expect_blocks[i]));

  const auto sums = values(render_discrete(partial_sums_of(Character{0.5}), 0, 3));
  const std::vector<double> expect_sums{1, 0, 1, 0};
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(sums[i] - expect_sums[i]) < 1e-15);

  // Partial sums vanish left of 0.
  const auto left = render_discrete(partial_sums_of(Character{0.0}), -2, 2);
  CHECK(left.at(-1) == cplx(0.0));
  CHECK(std::abs(left.at(2) - cplx(3.0)) < 1e-15);

  // Blocks mirror to n < 0.
  const auto mirrored = render_discrete(BlockSequence{}, -6, 6);
  for (std::int64_t n = 1; n <= 6; ++n) CHECK(mirrored.at(-n) == mirrored.at(n));
}

TEST_CASE("continuous renderings") {
  const auto one = render_continuous(Character{0.0}, 0.0, 0.5, 3);
  for (const auto& v : one.samples()) CHECK(std::abs(v - cplx(1.0)) < 1e-15);

  const auto tp = render_continuous(TrigPoly{{{1.0, 0.25}}}, 0.0, 1.0, 2);
  CHECK(std::abs(tp.samples()[0] - cplx(1.0)) < 1e-15);
  CHECK(std::abs(tp.samples()[1] - cplx(0.0, 1.0)) < 1e-15);

  const auto m = render_continuous(MeasureTransform{{{0.0, 0.3}, {0.2, 0.7}}, {}}, 0.0, 0.1, 4);
  CHECK(std::abs(m.samples()[0] - cplx(1.0)) < 1e-15);
  CHECK(m.x_end() == doctest::Approx(0.3));
}

TEST_CASE("declared bounds and frequencies") {
  CHECK(*declared_bound(Character{0.3}) == 1.0);
  CHECK(*declared_bound(TrigPoly{{{2.0, 0.1}, {{0.0, 0.5}, 0.2}}}) == doctest::Approx(2.5));
  CHECK(*declared_bound(DirichletLine{{1.0, 1.0}, 2.0, 1.0}) == doctest::Approx(1.25));
  CHECK(!declared_bound(partial_sums_of(Character{0.5})));

  const auto f = declared_frequencies(TrigPoly{{{1.0, 0.125}, {0.5, -0.25}}});
  REQUIRE(f);
  CHECK(f->size() == 2);
  CHECK(!declared_frequencies(BlockSequence{}));
  CHECK(*max_frequency(TrigPoly{{{1.0, 0.125}, {0.5, -0.25}}}) == doctest::Approx(0.25));

  CHECK(aliasing_ok(Character{1.0}, 0.05));
  CHECK(!aliasing_ok(Character{4.0}, 0.05));
  CHECK(aliasing_ok(BlockSequence{}, 10.0));
}

TEST_CASE("signal containers") {
  CHECK(code_of([] { DiscreteSignal(0, {2.0}, 1.0); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { DiscreteSignal(0, {std::nan("")}); }) == ErrorCode::InvalidArgument);

  const DiscreteSignal z(5, {1.0, 2.0, 3.0}, std::nullopt, Extension::ZeroOutside);
  CHECK(z.n_max() == 7);
  CHECK(z.bound() == 3.0);
  CHECK(z.at(4) == cplx(0.0));
  CHECK(z.at(6) == cplx(2.0));
  CHECK(code_of([&] { z.at(8); }) == ErrorCode::WindowOutOfRange);
  CHECK(code_of([&] { z.with_extension(Extension::ValidOnly).at(4); }) == ErrorCode::WindowOutOfRange);
}

TEST_CASE("window schedules") {
  const auto s = WindowSchedule::geometric(2, 1024, 2, Sidedness::OneSided);
  REQUIRE(s.lengths.size() == 10);
  CHECK(s.lengths.front() == 2);
  CHECK(s.lengths.back() == 1024);
  CHECK(code_of([] { WindowSchedule{{4, 2}, Sidedness::TwoSided}.validate(); }) ==
        ErrorCode::InvalidArgument);
  CHECK(code_of([] { WindowSchedule{{}, Sidedness::TwoSided}.validate(); }) == ErrorCode::InvalidArgument);
}
