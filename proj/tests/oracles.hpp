#pragma once

// Independent reference computations: direct sums, no prefix sums, no FFT.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "acsum/signal.hpp"
#include "acsum/spectral.hpp"

namespace acsum::oracles {

inline cplx window_average(const DiscreteSignal& s, std::int64_t k, std::int64_t n, Sidedness side) {
  cplx acc{};
  if (side == Sidedness::TwoSided) {
    for (std::int64_t i = n - k; i <= n + k; ++i) acc += s.at(i);
    return acc / static_cast<double>(2 * k + 1);
  }
  for (std::int64_t i = 0; i < k; ++i) acc += s.at(n + i);
  return acc / static_cast<double>(k);
}

// Trapezoid integral of the samples between grid indices a <= b.
inline cplx trapezoid(const ContinuousSignal& s, std::size_t a, std::size_t b) {
  cplx acc{};
  for (std::size_t j = a; j < b; ++j) acc += 0.5 * (s.samples()[j] + s.samples()[j + 1]);
  return acc * s.step();
}

inline std::vector<cplx> naive_dft(const std::vector<cplx>& x) {
  const std::size_t n = x.size();
  std::vector<cplx> out(n);
  for (std::size_t k = 0; k < n; ++k) {
    cplx acc{};
    for (std::size_t j = 0; j < n; ++j) {
      const double turns = static_cast<double>((k * j) % n) / static_cast<double>(n);
      acc += x[j] * std::polar(1.0, -2.0 * std::numbers::pi * turns);
    }
    out[k] = acc;
  }
  return out;
}

// Componentwise sup/inf of two-sided window averages over every valid shift.
struct Extremes {
  cplx sup{-1e300, -1e300};
  cplx inf{1e300, 1e300};
};

inline Extremes two_sided_extremes(const std::vector<cplx>& v, std::int64_t k) {
  Extremes e;
  const auto n = static_cast<std::int64_t>(v.size());
  cplx run{};
  for (std::int64_t i = 0; i < 2 * k + 1; ++i) run += v[i];
  for (std::int64_t c = k; c + k < n; ++c) {
    if (c > k) run += v[c + k] - v[c - k - 1];
    const cplx a = run / static_cast<double>(2 * k + 1);
    e.sup = {std::max(e.sup.real(), a.real()), std::max(e.sup.imag(), a.imag())};
    e.inf = {std::min(e.inf.real(), a.real()), std::min(e.inf.imag(), a.imag())};
  }
  return e;
}

// psi - f*psi by direct convolution, then the largest window's extremes.
inline double invariance_residual(const DiscreteSignal& s, const spectral::Kernel& f, std::int64_t k) {
  const auto v = s.values();
  const auto n = static_cast<std::int64_t>(v.size());
  std::vector<cplx> diff;
  for (std::int64_t i = f.offset_max(); i + f.offset_min < n && i - f.offset_max() >= 0 && i < n; ++i) {
    if (i - f.offset_min >= n) break;
    cplx acc{};
    for (std::size_t j = 0; j < f.weights.size(); ++j) {
      acc += f.weights[j] * v[i - (f.offset_min + static_cast<std::int64_t>(j))];
    }
    diff.push_back(v[i] - acc);
  }
  const auto e = two_sided_extremes(diff, k);
  return std::max(std::abs(e.sup), std::abs(e.inf));
}

}  // namespace acsum::oracles
