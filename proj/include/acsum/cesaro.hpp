#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "acsum/signal.hpp"
#include "acsum/spectral.hpp"
#include "acsum/verdict.hpp"

/// Uniform sliding Cesaro means: the computable side of almost convergence.
///
/// Discrete windows: two-sided (1/(2k+1)) sum_{i=n-k}^{n+k} psi(i), one-sided
/// (1/k) sum_{i=0}^{k-1} psi(n+i). Continuous windows: two-sided
/// (1/2theta) int_{x-theta}^{x+theta}, one-sided (1/theta) int_x^{x+theta},
/// integrals by the trapezoid rule. The sup over all shifts is replaced by a
/// sup over the admissible shift grid (every `stride`-th sample).
namespace acsum::cesaro {

/// Extremes of the window averages at one window length. Real and
/// imaginary parts are maximised independently, as in the complex
/// reduction of almost convergence to its real and imaginary parts.
struct WindowExtremes {
  double length = 0.0;
  cplx sup;
  cplx inf;
  double argmax_re = 0.0;
  double argmin_re = 0.0;
  double argmax_im = 0.0;
  double argmin_im = 0.0;
  std::size_t shift_count = 0;

  /// |sup - inf| taken componentwise: hypot(sup.re - inf.re, sup.im - inf.im).
  double gap() const;
};

struct CesaroSweep {
  std::vector<WindowExtremes> windows;
  Sidedness sidedness = Sidedness::TwoSided;
  std::size_t shift_stride = 1;
  bool continuous = false;
  cplx p_bar;    // sup average at the largest window
  cplx p_lower;  // inf average at the largest window
  bool gap_nonincreasing = true;
  /// Set by callers whose data carries no smoothness information; the
  /// verdict then says its sup is only relative to the shift grid.
  bool grid_relative = false;
};

cplx window_average(const DiscreteSignal& signal, std::int64_t k, std::int64_t shift,
                    Sidedness sidedness);
cplx window_average(const ContinuousSignal& signal, double theta, double shift,
                    Sidedness sidedness);

/// Admissible shifts under the signal's extension policy, every `stride`-th
/// one starting from the first. Throws WindowOutOfRange when none exists.
std::vector<std::int64_t> admissible_shifts(const DiscreteSignal& signal, std::int64_t k,
                                            Sidedness sidedness, std::size_t stride = 1);
std::vector<double> admissible_shifts(const ContinuousSignal& signal, double theta,
                                      Sidedness sidedness, std::size_t stride = 1);

/// Exact extremes over the given shifts; ties go to the smallest shift.
/// Throws EmptyGrid for an empty grid.
WindowExtremes shift_extremes(const DiscreteSignal& signal, std::int64_t k,
                              Sidedness sidedness, const std::vector<std::int64_t>& shifts);
WindowExtremes shift_extremes(const ContinuousSignal& signal, double theta,
                              Sidedness sidedness, const std::vector<double>& shifts);

CesaroSweep cesaro_sweep(const DiscreteSignal& signal, const WindowSchedule& schedule,
                         std::size_t shift_stride = 1);
CesaroSweep cesaro_sweep(const ContinuousSignal& signal, const WindowSchedule& schedule,
                         std::size_t shift_stride = 1);

/// Tri-state decision from the last three windows of a sweep:
///   AlmostConvergent(midpoint) if gap <= tol at the largest window and the
///     gap does not grow (beyond 0.1*tol) across the last three;
///   NotAlmostConvergent if gap >= 10*tol at each of the last three, with a
///     witness pair of shifts at the largest window;
///   Inconclusive otherwise.
/// Requires at least three windows.
AcVerdict ac_verdict(const CesaroSweep& sweep, double tol);

/// max(|p_bar|, |p_lower|) of psi - f*psi over the range where f*psi is
/// valid. The kernel must be nonnegative with unit mass.
double convolution_invariance_residual(const DiscreteSignal& signal,
                                       const spectral::Kernel& kernel,
                                       const WindowSchedule& schedule);
double convolution_invariance_residual(const ContinuousSignal& signal,
                                       const spectral::Kernel& kernel,
                                       const WindowSchedule& schedule);

}  // namespace acsum::cesaro
