#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "acsum/cyclic.hpp"
#include "acsum/error.hpp"

namespace acsum::cyclic {

namespace {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  cplx gaussian() { return {normal_(rng_), normal_(rng_)}; }

  CyclicFunction random_function(std::size_t n) {
    CyclicFunction f = CyclicFunction::zero(n);
    for (auto& v : f.values) v = gaussian();
    return f;
  }

  std::size_t below(std::size_t bound) {
    return std::uniform_int_distribution<std::size_t>(0, bound - 1)(rng_);
  }

  double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(rng_); }

  /// Sorted random subset of Z_N with `size` elements.
  Subset subset(std::size_t n, std::size_t size) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < size; ++i) std::swap(all[i], all[i + below(n - i)]);
    Subset s(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(s.begin(), s.end());
    return s;
  }

  /// `count` random combinations of the characters in s.
  std::vector<CyclicFunction> mixed_characters(const Subset& s, std::size_t n,
                                               std::size_t count) {
    std::vector<CyclicFunction> chis;
    for (std::size_t l : s) chis.push_back(CyclicFunction::character(l, n));
    std::vector<CyclicFunction> out;
    for (std::size_t j = 0; j < count; ++j) {
      CyclicFunction f = CyclicFunction::zero(n);
      for (const auto& chi : chis) {
        const cplx c = gaussian();
        for (std::size_t x = 0; x < n; ++x) f.values[x] += c * chi.values[x];
      }
      out.push_back(std::move(f));
    }
    return out;
  }

 private:
  std::mt19937_64 rng_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

double sup_norm(const CyclicFunction& f) {
  double m = 0.0;
  for (const auto& v : f.values) m = std::max(m, std::abs(v));
  return m;
}

double sup_distance(const CyclicFunction& a, const CyclicFunction& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.order(); ++i) m = std::max(m, std::abs(a.values[i] - b.values[i]));
  return m;
}

/// Largest subspace dimension handled with dense algebra at this N.
std::size_t dense_cap(std::size_t n) { return std::min<std::size_t>(n, 24); }

}  // namespace

SuiteReport run_suite(std::size_t n, std::size_t cases, std::uint64_t seed, double tol) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Z_N needs N >= 1");
  SuiteReport report;
  report.order = n;
  report.cases = cases;
  report.seed = seed;
  Sampler rng(seed * 0x9E3779B97F4A7C15ULL + n);

  auto fail = [&](std::size_t c, const std::string& what) {
    report.failures.push_back("N=" + std::to_string(n) + " case=" + std::to_string(c) + ": " +
                              what);
  };

  for (std::size_t c = 0; c < cases; ++c) {
    // Fourier round trip.
    {
      const auto f = rng.random_function(n);
      const double err = sup_distance(zn_inverse(zn_fourier(f)), f) / sup_norm(f);
      report.max_roundtrip_error = std::max(report.max_roundtrip_error, err);
      if (err <= 1e-12) {
        ++report.roundtrip_pass;
      } else {
        fail(c, "round trip error " + std::to_string(err));
      }
    }

    // Convolution theorem against the direct sum.
    {
      const auto f = rng.random_function(n);
      const auto g = rng.random_function(n);
      const auto lhs = zn_fourier(convolve(f, g));
      const auto fh = zn_fourier(f);
      const auto gh = zn_fourier(g);
      CyclicFunction rhs = CyclicFunction::zero(n);
      for (std::size_t l = 0; l < n; ++l) rhs.values[l] = fh.values[l] * gh.values[l];
      const double err = sup_distance(lhs, rhs) / std::max(sup_norm(rhs), 1e-300);
      report.max_convolution_error = std::max(report.max_convolution_error, err);
      if (err <= 1e-10) {
        ++report.convolution_pass;
      } else {
        fail(c, "convolution theorem error " + std::to_string(err));
      }
    }

    // sp(Phi) = {lambda : chi_lambda in Phi} on a random invariant subspace.
    {
      Subset s;
      if (c % 10 == 0 && n <= 64) {
        s = rng.subset(n, n);  // whole space
      } else {
        s = rng.subset(n, rng.below(dense_cap(n) + 1));
      }
      const auto basis = rng.mixed_characters(s, n, s.size());
      const auto r = verify_character_spectrum(basis, n, tol);
      if (r.pass && r.via_characters == s) {
        ++report.character_spectrum_pass;
      } else {
        fail(c, "character spectrum mismatch");
      }
    }

    // Invariant mean <=> sp(phi) = {0}.
    {
      CyclicFunction w = CyclicFunction::zero(n);
      bool expect_invariant = false;
      switch (c % 3) {
        case 0:
          w = CyclicFunction::constant(1.0 / static_cast<double>(n), n);
          expect_invariant = true;
          break;
        case 1:
          w = CyclicFunction::delta(rng.below(n), n);
          expect_invariant = n == 1;
          break;
        default: {
          double total = 0.0;
          for (auto& v : w.values) {
            v = rng.uniform();
            total += v.real();
          }
          for (auto& v : w.values) v /= total;
          expect_invariant = n == 1;
        }
      }
      const auto r = invariant_mean_check(w, tol);
      if (r.pass && r.invariant == expect_invariant) {
        ++report.invariant_mean_pass;
      } else {
        fail(c, "invariant mean equivalence");
      }
    }

    // Uniform mean annihilates psi <=> 0 not in sp(psi).
    {
      auto psi = rng.random_function(n);
      const bool zero_sum = c % 2 == 0;
      if (zero_sum) {
        cplx mean{};
        for (const auto& v : psi.values) mean += v;
        mean /= static_cast<double>(n);
        for (auto& v : psi.values) v -= mean;
      }
      const auto r = mean_annihilator_check(psi, tol);
      // For N = 1 a zero-sum function is identically zero.
      if (r.pass && r.annihilated == zero_sum) {
        ++report.mean_annihilator_pass;
      } else {
        fail(c, "mean annihilator equivalence");
      }
    }

    // Double duality E^perp^perp = E.
    {
      std::vector<CyclicFunction> e;
      if (n <= 256 && c % 2 == 0) {
        const std::size_t r = rng.below(n + 1);
        for (std::size_t j = 0; j < r; ++j) e.push_back(rng.random_function(n));
      } else {
        const auto s = rng.subset(n, rng.below(dense_cap(n) + 1));
        e = rng.mixed_characters(s, n, s.empty() ? 0 : 1 + rng.below(s.size()));
        // A dependent extra vector exercises deduplication.
        if (!e.empty()) {
          CyclicFunction sum = e.front();
          for (std::size_t x = 0; x < n; ++x) sum.values[x] += e.back().values[x];
          e.push_back(std::move(sum));
        }
      }
      const auto perp = annihilator(e, n, tol);
      const auto back = annihilator(perp.basis, n, tol);
      bool ok = perp.input_rank + perp.basis.size() == n && same_span(e, back.basis, n, tol);
      // Spot-check the pairing itself.
      if (ok && !e.empty() && !perp.basis.empty()) {
        const auto& g = perp.basis[rng.below(perp.basis.size())];
        const auto& v = e[rng.below(e.size())];
        ok = std::abs(pairing(g, v)) <= 1e-8 * sup_norm(v) * std::sqrt(static_cast<double>(n));
      }
      if (ok) {
        ++report.duality_pass;
      } else {
        fail(c, "annihilator double duality");
      }
    }

    // annihilator(I(C)) = span{chi_lambda : lambda in C}, and I(C) is an ideal.
    {
      const auto cset = rng.subset(n, rng.below(std::min<std::size_t>(n, 32) + 1));
      const auto ideal = ideal_for(cset, n);
      const auto perp = annihilator(ideal.basis, n, tol);
      std::vector<CyclicFunction> chis;
      for (std::size_t l : cset) chis.push_back(CyclicFunction::character(l, n));
      bool ok = ideal.dimension() == n - cset.size() && same_span(perp.basis, chis, n, tol);
      if (ok && !ideal.basis.empty()) {
        const auto& f = ideal.basis[rng.below(ideal.basis.size())];
        const auto fg = convolve(rng.random_function(n), f);
        const auto z = zero_set(fg, 1e-9);
        ok = std::includes(z.begin(), z.end(), cset.begin(), cset.end());
      }
      if (ok) {
        ++report.ideal_correspondence_pass;
      } else {
        fail(c, "ideal/annihilator correspondence");
      }
    }
  }
  return report;
}

}  // namespace acsum::cyclic
