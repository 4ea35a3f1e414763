#include "acsum/signal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "acsum/error.hpp"

namespace acsum {

namespace {

double sup_abs(std::span<const cplx> values) {
  double m = 0.0;
  for (const cplx& v : values) m = std::max(m, std::abs(v));
  return m;
}

double checked_bound(std::span<const cplx> values, std::optional<double> bound) {
  for (const cplx& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(ErrorCode::InvalidArgument, "signal values must be finite");
    }
  }
  const double observed = sup_abs(values);
  if (!bound) return observed;
  if (!std::isfinite(*bound) || *bound < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "bound must be finite and >= 0");
  }
  if (observed > *bound * (1.0 + 1e-12) + 1e-300) {
    throw Error(ErrorCode::InvalidArgument,
                "declared bound " + std::to_string(*bound) +
                    " is below max |value| " + std::to_string(observed));
  }
  return *bound;
}

}  // namespace

DiscreteSignal::DiscreteSignal(std::int64_t n_min, std::vector<cplx> values,
                               std::optional<double> bound, Extension extension)
    : n_min_(n_min), values_(std::move(values)), bound_(0.0), extension_(extension) {
  if (values_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "discrete signal needs n_min <= n_max");
  }
  bound_ = checked_bound(values_, bound);
}

cplx DiscreteSignal::at(std::int64_t n) const {
  if (n >= n_min_ && n <= n_max()) {
    return values_[static_cast<std::size_t>(n - n_min_)];
  }
  if (extension_ == Extension::ZeroOutside && n < n_min_) return {};
  throw Error(ErrorCode::WindowOutOfRange,
              "index " + std::to_string(n) + " outside [" + std::to_string(n_min_) +
                  ", " + std::to_string(n_max()) + "]");
}

DiscreteSignal DiscreteSignal::with_extension(Extension extension) const {
  DiscreteSignal copy = *this;
  copy.extension_ = extension;
  return copy;
}

ContinuousSignal::ContinuousSignal(double x0, double step, std::vector<cplx> samples,
                                   std::optional<double> bound, Extension extension)
    : x0_(x0), step_(step), samples_(std::move(samples)), bound_(0.0),
      extension_(extension) {
  if (!(step_ > 0.0) || !std::isfinite(step_)) {
    throw Error(ErrorCode::InvalidArgument, "grid step h must be > 0");
  }
  if (samples_.empty()) {
    throw Error(ErrorCode::InvalidArgument, "continuous signal needs at least one sample");
  }
  bound_ = checked_bound(samples_, bound);
}

ContinuousSignal ContinuousSignal::with_extension(Extension extension) const {
  ContinuousSignal copy = *this;
  copy.extension_ = extension;
  return copy;
}

void WindowSchedule::validate() const {
  if (lengths.empty()) {
    throw Error(ErrorCode::InvalidArgument, "window schedule is empty");
  }
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (!(lengths[i] > 0.0) || !std::isfinite(lengths[i])) {
      throw Error(ErrorCode::InvalidArgument, "window lengths must be positive");
    }
    if (i > 0 && !(lengths[i] > lengths[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "window lengths must strictly increase");
    }
  }
}

WindowSchedule WindowSchedule::geometric(double first, double last, double growth,
                                         Sidedness sidedness) {
  if (!(first > 0.0) || !(last >= first) || !(growth > 1.0)) {
    throw Error(ErrorCode::InvalidArgument,
                "geometric schedule needs 0 < first <= last and growth > 1");
  }
  WindowSchedule s;
  s.sidedness = sidedness;
  // Relative slack so that e.g. 2^10 is reached despite rounding.
  for (double k = first; k <= last * (1.0 + 1e-12); k *= growth) {
    const double rounded = std::round(k);
    const double value = std::abs(k - rounded) < 1e-9 * k ? rounded : k;
    if (s.lengths.empty() || value > s.lengths.back()) s.lengths.push_back(value);
  }
  return s;
}

}  // namespace acsum
