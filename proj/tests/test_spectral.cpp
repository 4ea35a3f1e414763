#include <doctest.h>

#include <cmath>
#include <random>

#include "acsum/error.hpp"
#include "acsum/fft.hpp"
#include "acsum/generators.hpp"
#include "acsum/spectral.hpp"
#include "oracles.hpp"

using namespace acsum;
using namespace acsum::spectral;

namespace {

std::vector<double> masked(const SpectrumEstimate& e) {
  std::vector<double> out;
  for (std::size_t i = 0; i < e.freqs.size(); ++i) {
    if (e.support_mask[i]) out.push_back(e.freqs[i]);
  }
  return out;
}

double magnitude_at(const SpectrumEstimate& e, double f) {
  for (std::size_t i = 0; i < e.freqs.size(); ++i) {
    if (std::abs(e.freqs[i] - f) < 1e-12) return e.magnitudes[i];
  }
  return -1.0;
}

}  // namespace

TEST_CASE("fft against a naive DFT") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (std::size_t n : {1, 2, 7, 64, 97, 360}) {
    std::vector<cplx> x(n);
    for (auto& v : x) v = {g(rng), g(rng)};
    const auto fast = fft::forward(x);
    const auto slow = oracles::naive_dft(x);
    double err = 0.0;
    for (std::size_t k = 0; k < n; ++k) err = std::max(err, std::abs(fast[k] - slow[k]));
    CHECK(err < 1e-11 * static_cast<double>(n));
    const auto back = fft::inverse(fast);
    for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(back[k] - x[k]) < 1e-13);
  }
  CHECK(fft::bin_frequency(3, 8) == 0.375);
  CHECK(fft::bin_frequency(4, 8) == -0.5);
}

TEST_CASE("tapered spectra") {
  const auto chi = render_discrete(Character{0.125}, 0, 63);
  const auto e1 = dft_spectrum(chi, Taper::Rectangular);
  CHECK(masked(e1) == std::vector<double>{0.125});
  CHECK(magnitude_at(e1, 0.125) == doctest::Approx(64.0));
  CHECK(e1.parseval_rel_error < 1e-9);
  CHECK(e1.resolution() == doctest::Approx(1.0 / 64.0));

  const auto one = render_discrete(Character{0.0}, 0, 63);
  CHECK(masked(dft_spectrum(one, Taper::Rectangular)) == std::vector<double>{0.0});

  const auto tp = render_discrete(TrigPoly{{{1.0, 0.125}, {0.5, -0.25}}}, 0, 63);
  const auto e2 = dft_spectrum(tp, Taper::Rectangular);
  CHECK(masked(e2) == std::vector<double>{-0.25, 0.125});
  CHECK(magnitude_at(e2, 0.125) / magnitude_at(e2, -0.25) == doctest::Approx(2.0));

  // Hann taper: magnitudes against the direct DFT of the tapered samples.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(50);
  for (auto& x : v) x = {u(rng), u(rng)};
  const auto e3 = dft_spectrum(DiscreteSignal(0, v), Taper::Hann);
  CHECK(e3.parseval_rel_error < 1e-9);
  CHECK(e3.freqs.size() == 50);
  CHECK(std::is_sorted(e3.freqs.begin(), e3.freqs.end()));

  CHECK_THROWS_AS(dft_spectrum(DiscreteSignal(0, {1.0})), Error);
}

TEST_CASE("support check") {
  const auto chi = render_discrete(Character{0.125}, 0, 63);
  const auto r1 = spectrum_support_check(Character{0.125}, dft_spectrum(chi, Taper::Rectangular));
  CHECK(r1.pass);
  CHECK(r1.max_offset == 0.0);

  // Bin-aligned tones: the Hann main lobe spans one bin either side.
  const TrigPoly tp{{{1.0, 410.0 / 4096}, {{0.0, 0.7}, -971.0 / 4096}, {0.4, 1270.0 / 4096}}};
  const auto r2 = spectrum_support_check(tp, dft_spectrum(render_discrete(tp, 0, 4095)));
  CHECK(r2.pass);
  CHECK(r2.max_offset <= 2.0 / 4096.0);

  // 4095 samples put 0.2 on a bin.
  const MeasureTransform m{{{0.0, 0.3}, {0.2, 0.7}}, {}};
  const auto r3 = spectrum_support_check(m, dft_spectrum(render_discrete(m, 0, 4094)));
  CHECK(r3.pass);
  for (double f : r3.masked_freqs) CHECK((std::abs(f) <= 2.0 / 4095 || std::abs(f - 0.2) <= 2.0 / 4095));

  // Off-bin tones leak Hann sidelobes above the default mask, far beyond
  // the main lobe; the check reports that rather than hiding it.
  const TrigPoly off{{{1.0, 0.1}, {{0.0, 0.7}, -0.237}, {0.4, 0.31}}};
  const auto r4 = spectrum_support_check(off, dft_spectrum(render_discrete(off, 0, 4095)));
  CHECK(!r4.pass);
  CHECK(r4.max_offset < 0.02);

  // A frequency the generator does not declare is reported.
  const auto wrong = spectrum_support_check(Character{0.3}, dft_spectrum(chi, Taper::Rectangular));
  CHECK(!wrong.pass);
  CHECK(!wrong.violations.empty());
}

TEST_CASE("kernels") {
  CHECK(Kernel::delta().mass() == 1.0);
  CHECK(Kernel::fejer(64).mass() == doctest::Approx(1.0));
  CHECK(Kernel::fejer(64).nonnegative());
  CHECK(Kernel::fejer(64).offset_min == -63);
  const auto g = Kernel::geometric(0.5);
  CHECK(g.mass() == doctest::Approx(1.0));
  for (double f : {0.0, 0.1, 0.25, 0.5}) {
    CHECK(kernel_transform_magnitude(g, f) >= (1.0 - 0.5) / (1.0 + 0.5) - 1e-12);
  }
  CHECK(kernel_transform_magnitude(Kernel{0, {0.5, 0.5}}, 0.5) < 1e-15);
  CHECK(Kernel{0, {1.0, 3.0}}.normalized().weights[1] == 0.75);
}

TEST_CASE("convolution") {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> v(300);
  for (auto& x : v) x = {u(rng), u(rng)};
  const DiscreteSignal s(-10, v);

  const auto id = convolve(s, Kernel::delta());
  CHECK(id.n_min() == -10);
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(std::abs(id.values()[i] - v[i]) < 1e-14);

  const Kernel f{-2, {0.1, 0.2, 0.3, 0.4}};
  const auto out = convolve(s, f);
  CHECK(out.n_min() == s.n_min() + f.offset_max());
  CHECK(out.n_max() == s.n_max() + f.offset_min);
  for (std::int64_t n = out.n_min(); n <= out.n_max(); ++n) {
    cplx expect{};
    for (std::size_t j = 0; j < f.weights.size(); ++j) {
      expect += f.weights[j] * s.at(n - (f.offset_min + static_cast<std::int64_t>(j)));
    }
    CHECK(std::abs(out.at(n) - expect) < 1e-13);
  }

  const auto alt = convolve(render_discrete(Character{0.5}, 0, 99), Kernel{0, {0.5, 0.5}});
  for (const auto& x : alt.values()) CHECK(std::abs(x) < 1e-15);
  const auto c = convolve(render_discrete(TrigPoly{{{2.5, 0.0}}}, 0, 99), Kernel::fejer(5));
  for (const auto& x : c.values()) CHECK(std::abs(x - 2.5) < 1e-13);

  CHECK_THROWS_AS(convolve(DiscreteSignal(0, {1.0, 2.0}), Kernel::fejer(5)), Error);
}

TEST_CASE("highpass projection") {
  const auto chi = render_discrete(Character{0.125}, 0, 4095);
  const auto r1 = highpass_project(chi, 1.0 / 16.0);
  CHECK(r1.residual <= 1e-9);

  const auto c = render_discrete(TrigPoly{{{0.7, 0.0}}}, 0, 4095);
  const auto r2 = highpass_project(c, 1.0 / 16.0);
  CHECK(r2.residual == doctest::Approx(0.7).epsilon(1e-9));
  for (std::size_t i = r2.valid_lo; i <= r2.valid_hi; ++i) CHECK(std::abs(r2.filtered[i]) < 1e-9);

  const MeasureTransform m{{{0.0, 0.3}, {0.2, 0.7}}, {}};
  const auto r3 = highpass_project(render_discrete(m, -(1 << 13), 1 << 13), 0.05);
  CHECK(r3.residual == doctest::Approx(0.3).epsilon(1e-3));

  CHECK_THROWS_AS(highpass_project(chi, 0.6), Error);
}

TEST_CASE("spectral verdicts") {
  const auto two = render_discrete(TrigPoly{{{2.0, 0.0}}}, -(1 << 12), 1 << 12);
  const auto v1 = spectral_ac_verdict(two, {0.05, 0.02, 0.01}, 1e-2);
  CHECK(v1.status == AcStatus::AlmostConvergent);
  CHECK(std::abs(*v1.limit - 2.0) < 1e-12);

  const TrigPoly tp{{{1.0, 0.2}, {1.0, -0.3}}};
  const auto v2 = spectral_ac_verdict(render_discrete(tp, -(1 << 14), 1 << 14), {0.05, 0.02, 0.01}, 1e-2);
  CHECK(v2.status == AcStatus::AlmostConvergent);
  CHECK(std::abs(*v2.limit) <= 1e-4);

  const auto d = render_continuous(DirichletLine{{1.0, 1.0}, 2.0, 1.0}, 0.0, 0.05, 81921);
  const auto v3 = spectral_ac_verdict(d, {0.05, 0.02, 0.01}, 1e-2);
  CHECK(v3.status == AcStatus::AlmostConvergent);
  CHECK(std::abs(*v3.limit - 1.0) <= 1e-2);

  // Never negative, even on a sequence that is not almost convergent.
  const auto blocks = render_discrete(BlockSequence{}, 0, 1 << 14);
  CHECK(spectral_ac_verdict(blocks, {0.05, 0.02, 0.01}, 1e-2).status != AcStatus::NotAlmostConvergent);
}
