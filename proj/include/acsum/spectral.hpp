#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "acsum/generators.hpp"
#include "acsum/signal.hpp"
#include "acsum/verdict.hpp"

namespace acsum::spectral {

enum class Taper { Rectangular, Hann };

/// Tapered-DFT magnitudes on a centered frequency axis, with a threshold
/// mask standing in for the (closed) spectrum of the sampled function.
struct SpectrumEstimate {
  std::vector<double> freqs;       // ascending; cycles per sample (discrete) or per unit
  std::vector<double> magnitudes;  // |sum_n w_n x_n e^{-2 pi i k n / N}|
  std::vector<bool> support_mask;  // magnitude > mask_threshold
  Taper taper = Taper::Hann;
  double mask_threshold = 0.0;
  std::size_t window_length = 0;
  double step = 1.0;
  /// |sum |X_k|^2 - N sum |w_n x_n|^2| / (N sum |w_n x_n|^2).
  double parseval_rel_error = 0.0;

  /// Bin spacing on the frequency axis.
  double resolution() const {
    return 1.0 / (static_cast<double>(window_length) * step);
  }
};

/// 1e-6 * B * window length.
double default_mask_threshold(double bound, std::size_t length);

SpectrumEstimate dft_spectrum(const DiscreteSignal& signal, Taper taper = Taper::Hann,
                              std::optional<double> mask_threshold = std::nullopt);
SpectrumEstimate dft_spectrum(const ContinuousSignal& signal, Taper taper = Taper::Hann,
                              std::optional<double> mask_threshold = std::nullopt);

/// Finite-support kernel. Discrete: f(offset_min + j) = weights[j].
/// Continuous: density samples at (offset_min + j) * h, integrated by the
/// trapezoid rule on the signal grid.
struct Kernel {
  std::int64_t offset_min = 0;
  std::vector<double> weights;

  std::int64_t offset_max() const {
    return offset_min + static_cast<std::int64_t>(weights.size()) - 1;
  }
  /// sum of weights (step == 0) or trapezoid integral with grid step h.
  double mass(double step = 0.0) const;
  bool nonnegative() const;

  static Kernel delta();
  /// Triangle weights (width - |j|) / width^2 on |j| < width; unit mass.
  static Kernel fejer(std::int64_t width);
  /// (1-r) r^j, j >= 0, truncated where r^j < 1e-17 and renormalised.
  /// Its transform never vanishes: |f^| >= (1-r)/(1+r).
  static Kernel geometric(double ratio);
  /// Rescale so that mass(step) == 1.
  Kernel normalized(double step = 0.0) const;
};

/// (f * psi)(n) = sum_t f(t) psi(n - t). Output is ValidOnly on the
/// shrunken range where the whole kernel sees data. Throws KernelTooWide.
DiscreteSignal convolve(const DiscreteSignal& signal, const Kernel& kernel);
ContinuousSignal convolve(const ContinuousSignal& signal, const Kernel& kernel);

/// |f^(lambda)| for lambda in cycles per sample (discrete kernel).
double kernel_transform_magnitude(const Kernel& kernel, double freq);

/// psi_1 = psi - C_delta * psi where C_delta^ = 1 on |f| <= delta/2 and
/// rolls off (raised cosine) to 0 at |f| = delta. `residual` is
/// sup |psi - psi_1| over the interior where the circular filter agrees
/// with the linear one; samples outside [valid_lo, valid_hi] are edge
/// affected. delta is in cycles per sample (discrete) or per unit.
struct HighpassResult {
  std::vector<cplx> filtered;
  double residual = 0.0;
  std::size_t valid_lo = 0;  // sample indices, inclusive
  std::size_t valid_hi = 0;
};

HighpassResult highpass_project(const DiscreteSignal& signal, double delta);
HighpassResult highpass_project(const ContinuousSignal& signal, double delta);

/// Spectral-gap route: alpha = full-range mean; AlmostConvergent(alpha)
/// when some delta in the (strictly decreasing) schedule leaves a
/// highpass residual of psi - alpha <= tol. Never returns
/// NotAlmostConvergent.
AcVerdict spectral_ac_verdict(const DiscreteSignal& signal,
                              const std::vector<double>& delta_schedule, double tol);
AcVerdict spectral_ac_verdict(const ContinuousSignal& signal,
                              const std::vector<double>& delta_schedule, double tol);

struct SupportReport {
  bool pass = true;
  double max_offset = 0.0;        // worst distance from a masked bin to the declared set
  double leakage_distance = 0.0;  // 2 / (window length * step) + tol
  std::vector<double> masked_freqs;
  std::vector<double> violations;
  std::string notes;
};

/// Every masked frequency must lie within the Hann main-lobe half width
/// (two bins) plus `tol` of the generator's declared frequency set.
/// Distances are circular on the sampled frequency axis.
SupportReport spectrum_support_check(const GeneratorSpec& spec,
                                     const SpectrumEstimate& estimate, double tol = 0.0);

}  // namespace acsum::spectral
