#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace acsum {

using cplx = std::complex<double>;

/// How a finite rendering stands in for a function on all of Z or R.
///
/// ValidOnly: analysis windows must fit inside the rendered range.
/// ZeroOutside: the signal is taken to vanish below the first sample (the
/// "function on the half line" convention). Windows may hang off the left
/// edge but never past the last sample.
enum class Extension { ValidOnly, ZeroOutside };

enum class Sidedness { TwoSided, OneSided };

/// Samples psi(n) for n in [n_min, n_max].
class DiscreteSignal {
 public:
  /// `bound` defaults to max |value|; an explicit bound must dominate it.
  DiscreteSignal(std::int64_t n_min, std::vector<cplx> values,
                 std::optional<double> bound = std::nullopt,
                 Extension extension = Extension::ValidOnly);

  std::int64_t n_min() const { return n_min_; }
  std::int64_t n_max() const {
    return n_min_ + static_cast<std::int64_t>(values_.size()) - 1;
  }
  std::size_t size() const { return values_.size(); }
  double bound() const { return bound_; }
  Extension extension() const { return extension_; }
  std::span<const cplx> values() const { return values_; }

  /// Value at index n under the extension policy.
  cplx at(std::int64_t n) const;

  DiscreteSignal with_extension(Extension extension) const;

 private:
  std::int64_t n_min_;
  std::vector<cplx> values_;
  double bound_;
  Extension extension_;
};

/// Samples psi(x0 + j*h), j = 0..count-1. Window integrals use the
/// trapezoid rule on this grid (equivalently, exact integrals of the
/// piecewise-linear interpolant).
class ContinuousSignal {
 public:
  ContinuousSignal(double x0, double step, std::vector<cplx> samples,
                   std::optional<double> bound = std::nullopt,
                   Extension extension = Extension::ValidOnly);

  double x0() const { return x0_; }
  double step() const { return step_; }
  double x_end() const {
    return x0_ + step_ * static_cast<double>(samples_.size() - 1);
  }
  double x(std::size_t j) const { return x0_ + step_ * static_cast<double>(j); }
  std::size_t size() const { return samples_.size(); }
  double bound() const { return bound_; }
  Extension extension() const { return extension_; }
  std::span<const cplx> samples() const { return samples_; }

  ContinuousSignal with_extension(Extension extension) const;

 private:
  double x0_;
  double step_;
  std::vector<cplx> samples_;
  double bound_;
  Extension extension_;
};

/// Window lengths for a Cesaro sweep: integers k for Z (2k+1 points
/// two-sided, k points one-sided), real theta for R.
struct WindowSchedule {
  std::vector<double> lengths;
  Sidedness sidedness = Sidedness::TwoSided;

  /// Throws InvalidArgument unless nonempty, positive and strictly increasing.
  void validate() const;

  /// lengths first, first*growth, ... while <= last.
  static WindowSchedule geometric(double first, double last, double growth,
                                  Sidedness sidedness);
};

}  // namespace acsum
