#pragma once

#include <span>
#include <vector>

#include "acsum/signal.hpp"

namespace acsum::fft {

/// X[k] = sum_n x[n] e^{-2 pi i k n / N}, any N >= 1.
std::vector<cplx> forward(std::span<const cplx> x);

/// x[n] = (1/N) sum_k X[k] e^{2 pi i k n / N}; exact inverse of forward().
std::vector<cplx> inverse(std::span<const cplx> X);

/// Signed frequency of bin k in cycles per sample, in [-1/2, 1/2).
double bin_frequency(std::size_t k, std::size_t n);

}  // namespace acsum::fft
