#include "acsum/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "acsum/error.hpp"
#include "acsum/fft.hpp"

namespace acsum::spectral {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

SpectrumEstimate estimate(std::span<const cplx> x, double step, double bound, Taper taper,
                          std::optional<double> mask_threshold) {
  const std::size_t n = x.size();
  if (n < 2) throw Error(ErrorCode::TooShort, "spectrum needs at least 2 samples");

  std::vector<cplx> windowed(x.begin(), x.end());
  if (taper == Taper::Hann) {
    // Periodic Hann: a bin-aligned tone leaks into exactly its two neighbours.
    for (std::size_t j = 0; j < n; ++j) {
      windowed[j] *= 0.5 * (1.0 - std::cos(kTwoPi * static_cast<double>(j) / static_cast<double>(n)));
    }
  }
  double time_energy = 0.0;
  for (const auto& v : windowed) time_energy += std::norm(v);

  const auto spectrum = fft::forward(windowed);
  double freq_energy = 0.0;
  for (const auto& v : spectrum) freq_energy += std::norm(v);

  SpectrumEstimate est;
  est.taper = taper;
  est.window_length = n;
  est.step = step;
  est.mask_threshold = mask_threshold.value_or(default_mask_threshold(bound, n));
  if (est.mask_threshold < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "mask threshold must be >= 0");
  }
  const double expected = static_cast<double>(n) * time_energy;
  est.parseval_rel_error = expected > 0.0 ? std::abs(freq_energy - expected) / expected : 0.0;

  // Centered axis: bins n/2.. wrap to negative frequencies and come first.
  const std::size_t first = n - n / 2;
  est.freqs.reserve(n);
  est.magnitudes.reserve(n);
  est.support_mask.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t k = (first + i) % n;
    const double mag = std::abs(spectrum[k]);
    est.freqs.push_back(fft::bin_frequency(k, n) / step);
    est.magnitudes.push_back(mag);
    est.support_mask.push_back(mag > est.mask_threshold);
  }
  return est;
}

std::vector<double> trapezoid_weights(std::size_t count) {
  std::vector<double> c(count, 1.0);
  if (count >= 2) {
    c.front() = 0.5;
    c.back() = 0.5;
  }
  return c;
}

/// Convolution on a uniform grid; `scale` is 1 (sums) or h (trapezoid).
std::vector<cplx> convolve_valid(std::span<const cplx> x, const Kernel& kernel, double scale,
                                 bool trapezoid, std::size_t& first_index) {
  if (kernel.weights.empty()) throw Error(ErrorCode::InvalidArgument, "empty kernel");
  const auto n = static_cast<std::int64_t>(x.size());
  const std::int64_t lo = kernel.offset_max();        // first output index (relative)
  const std::int64_t hi = n - 1 + kernel.offset_min;  // last output index
  const std::int64_t start = std::max<std::int64_t>(0, lo);
  const std::int64_t stop = std::min<std::int64_t>(n - 1, hi);
  if (start > stop) {
    throw Error(ErrorCode::KernelTooWide, "kernel support exceeds the signal range");
  }
  const auto c = trapezoid ? trapezoid_weights(kernel.weights.size())
                           : std::vector<double>(kernel.weights.size(), 1.0);
  std::vector<cplx> out(static_cast<std::size_t>(stop - start + 1));
  for (std::int64_t i = start; i <= stop; ++i) {
    cplx acc{};
    for (std::size_t j = 0; j < kernel.weights.size(); ++j) {
      const std::int64_t t = kernel.offset_min + static_cast<std::int64_t>(j);
      acc += (c[j] * kernel.weights[j]) * x[static_cast<std::size_t>(i - t)];
    }
    out[static_cast<std::size_t>(i - start)] = acc * scale;
  }
  first_index = static_cast<std::size_t>(start);
  return out;
}

HighpassResult highpass(std::span<const cplx> x, double step, double delta) {
  const std::size_t n = x.size();
  const double nyquist = 0.5 / step;
  if (!(delta > 0.0)) throw Error(ErrorCode::InvalidArgument, "gap half-width must be > 0");
  if (!(delta < nyquist)) {
    throw Error(ErrorCode::GapTooWide, "gap half-width must be below Nyquist");
  }
  if (n < 2) throw Error(ErrorCode::TooShort, "highpass needs at least 2 samples");

  const double gap = delta * step;  // cycles per sample
  const double bin = 1.0 / static_cast<double>(n);
  // The flat part reaches one bin past delta/2 so that a Hann-tapered
  // spectrum of the output is still exactly empty on (-delta/2, delta/2).
  const double flat = 0.5 * gap + std::min(bin, 0.25 * gap);
  const double rolloff = gap - flat;
  const auto margin = static_cast<std::size_t>(std::ceil(8.0 / rolloff));
  if (2 * margin >= n) {
    throw Error(ErrorCode::TooShort,
                "signal of " + std::to_string(n) + " samples is too short for gap " +
                    std::to_string(delta) + " (edge margin " + std::to_string(margin) + ")");
  }

  auto spectrum = fft::forward(x);
  for (std::size_t k = 0; k < n; ++k) {
    const double f = std::abs(fft::bin_frequency(k, n));
    double c = 0.0;
    if (f <= flat) {
      c = 1.0;
    } else if (f < gap) {
      c = 0.5 * (1.0 + std::cos(std::numbers::pi * (f - flat) / rolloff));
    }
    spectrum[k] *= c;
  }
  const auto low = fft::inverse(spectrum);

  HighpassResult r;
  r.filtered.resize(n);
  for (std::size_t j = 0; j < n; ++j) r.filtered[j] = x[j] - low[j];
  r.valid_lo = margin;
  r.valid_hi = n - 1 - margin;
  for (std::size_t j = r.valid_lo; j <= r.valid_hi; ++j) {
    r.residual = std::max(r.residual, std::abs(low[j]));
  }
  return r;
}

AcVerdict gap_verdict(std::span<const cplx> x, double step,
                      const std::vector<double>& schedule, double tol) {
  if (schedule.empty()) throw Error(ErrorCode::InvalidArgument, "empty delta schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i) {
    if (!(schedule[i] < schedule[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "delta schedule must decrease toward 0");
    }
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");

  // DC value: the 0-frequency coefficient on the analysis window.
  cplx alpha = std::accumulate(x.begin(), x.end(), cplx{}) / static_cast<double>(x.size());
  std::vector<cplx> centered(x.begin(), x.end());
  for (auto& v : centered) v -= alpha;

  AcVerdict v;
  std::ostringstream notes;
  double best = std::numeric_limits<double>::infinity();
  double best_delta = 0.0;
  for (double delta : schedule) {
    try {
      const auto hp = highpass(centered, step, delta);
      notes << "delta=" << delta << " residual=" << hp.residual << "; ";
      if (hp.residual < best) {
        best = hp.residual;
        best_delta = delta;
      }
    } catch (const Error& e) {
      if (e.code() != ErrorCode::TooShort) throw;
      notes << "delta=" << delta << " skipped (signal too short); ";
    }
  }
  if (best <= tol) {
    v.status = AcStatus::AlmostConvergent;
    v.limit = alpha;
    v.uncertainty = best;
    notes << "certified at delta=" << best_delta;
  } else {
    v.status = AcStatus::Inconclusive;
    v.uncertainty = std::isfinite(best) ? best : 0.0;
    notes << "no delta reached tol; this route cannot certify divergence";
  }
  v.notes = notes.str();
  return v;
}

double circular_distance(double f, const FrequencyInterval& iv, double period) {
  if (iv.hi - iv.lo >= period) return 0.0;
  double shifted = iv.lo + std::fmod(f - iv.lo, period);
  if (shifted < iv.lo) shifted += period;
  if (shifted <= iv.hi) return 0.0;
  return std::min(shifted - iv.hi, iv.lo + period - shifted);
}

}  // namespace

double default_mask_threshold(double bound, std::size_t length) {
  return 1e-6 * bound * static_cast<double>(length);
}

SpectrumEstimate dft_spectrum(const DiscreteSignal& signal, Taper taper,
                              std::optional<double> mask_threshold) {
  return estimate(signal.values(), 1.0, signal.bound(), taper, mask_threshold);
}

SpectrumEstimate dft_spectrum(const ContinuousSignal& signal, Taper taper,
                              std::optional<double> mask_threshold) {
  return estimate(signal.samples(), signal.step(), signal.bound(), taper, mask_threshold);
}

double Kernel::mass(double step) const {
  if (weights.empty()) return 0.0;
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  if (step <= 0.0) return sum;
  if (weights.size() == 1) return step * sum;
  return step * (sum - 0.5 * (weights.front() + weights.back()));
}

bool Kernel::nonnegative() const {
  return std::all_of(weights.begin(), weights.end(), [](double w) { return w >= 0.0; });
}

Kernel Kernel::delta() { return Kernel{0, {1.0}}; }

Kernel Kernel::fejer(std::int64_t width) {
  if (width < 1) throw Error(ErrorCode::InvalidArgument, "Fejer width must be >= 1");
  Kernel k;
  k.offset_min = -(width - 1);
  const double norm = static_cast<double>(width) * static_cast<double>(width);
  for (std::int64_t j = -(width - 1); j <= width - 1; ++j) {
    k.weights.push_back(static_cast<double>(width - std::abs(j)) / norm);
  }
  return k;
}

Kernel Kernel::geometric(double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "geometric kernel ratio must lie in (0, 1)");
  }
  Kernel k;
  for (double w = 1.0 - ratio; w > 1e-17; w *= ratio) k.weights.push_back(w);
  return k.normalized();
}

Kernel Kernel::normalized(double step) const {
  const double m = mass(step);
  if (!(std::abs(m) > 0.0)) throw Error(ErrorCode::InvalidArgument, "kernel has zero mass");
  Kernel k = *this;
  for (auto& w : k.weights) w /= m;
  return k;
}

DiscreteSignal convolve(const DiscreteSignal& signal, const Kernel& kernel) {
  std::size_t first = 0;
  auto out = convolve_valid(signal.values(), kernel, 1.0, false, first);
  return DiscreteSignal(signal.n_min() + static_cast<std::int64_t>(first), std::move(out));
}

ContinuousSignal convolve(const ContinuousSignal& signal, const Kernel& kernel) {
  std::size_t first = 0;
  auto out = convolve_valid(signal.samples(), kernel, signal.step(), true, first);
  return ContinuousSignal(signal.x(first), signal.step(), std::move(out));
}

double kernel_transform_magnitude(const Kernel& kernel, double freq) {
  cplx acc{};
  for (std::size_t j = 0; j < kernel.weights.size(); ++j) {
    const double t = static_cast<double>(kernel.offset_min + static_cast<std::int64_t>(j));
    const double turns = freq * t;
    acc += kernel.weights[j] * std::polar(1.0, -kTwoPi * (turns - std::round(turns)));
  }
  return std::abs(acc);
}

HighpassResult highpass_project(const DiscreteSignal& signal, double delta) {
  return highpass(signal.values(), 1.0, delta);
}

HighpassResult highpass_project(const ContinuousSignal& signal, double delta) {
  return highpass(signal.samples(), signal.step(), delta);
}

AcVerdict spectral_ac_verdict(const DiscreteSignal& signal,
                              const std::vector<double>& delta_schedule, double tol) {
  return gap_verdict(signal.values(), 1.0, delta_schedule, tol);
}

AcVerdict spectral_ac_verdict(const ContinuousSignal& signal,
                              const std::vector<double>& delta_schedule, double tol) {
  return gap_verdict(signal.samples(), signal.step(), delta_schedule, tol);
}

SupportReport spectrum_support_check(const GeneratorSpec& spec,
                                     const SpectrumEstimate& estimate, double tol) {
  SupportReport r;
  r.leakage_distance = 2.0 * estimate.resolution() + tol;
  const auto declared = declared_frequencies(spec);
  if (!declared) {
    r.pass = false;
    r.notes = "generator has no declared frequency set";
    return r;
  }
  const double period = 1.0 / estimate.step;
  for (std::size_t i = 0; i < estimate.freqs.size(); ++i) {
    if (!estimate.support_mask[i]) continue;
    const double f = estimate.freqs[i];
    r.masked_freqs.push_back(f);
    double d = std::numeric_limits<double>::infinity();
    for (const auto& iv : *declared) d = std::min(d, circular_distance(f, iv, period));
    r.max_offset = std::max(r.max_offset, std::isfinite(d) ? d : period);
    if (!(d <= r.leakage_distance)) r.violations.push_back(f);
  }
  r.pass = r.violations.empty();
  r.notes = "leakage tolerance is the Hann main lobe width, an engineering bound";
  return r;
}

}  // namespace acsum::spectral
