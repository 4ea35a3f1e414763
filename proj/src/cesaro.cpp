#include "acsum/cesaro.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <thread>

#include "acsum/error.hpp"

namespace acsum::cesaro {

namespace {

using lcplx = std::complex<long double>;

/// Prefix sums in extended precision so that exact cancellations (e.g. of
/// (-1)^n over even windows) survive as exact zeros.
std::vector<lcplx> prefix_sums(std::span<const cplx> v) {
  std::vector<lcplx> p(v.size() + 1);
  for (std::size_t i = 0; i < v.size(); ++i) {
    p[i + 1] = p[i] + lcplx(v[i].real(), v[i].imag());
  }
  return p;
}

/// Cumulative trapezoid integral C[j] = int_{x0}^{x_j}.
std::vector<lcplx> cumulative_trapezoid(std::span<const cplx> v, double h) {
  std::vector<lcplx> c(v.size());
  const long double half = 0.5L * h;
  for (std::size_t j = 1; j < v.size(); ++j) {
    c[j] = c[j - 1] + half * (lcplx(v[j - 1].real(), v[j - 1].imag()) +
                              lcplx(v[j].real(), v[j].imag()));
  }
  return c;
}

class DiscreteWindows {
 public:
  explicit DiscreteWindows(const DiscreteSignal& s)
      : s_(s), prefix_(prefix_sums(s.values())) {}

  /// sum_{i=a}^{b} psi(i) under the extension policy.
  lcplx sum(std::int64_t a, std::int64_t b) const {
    if (b > s_.n_max() || (a < s_.n_min() && s_.extension() == Extension::ValidOnly)) {
      throw Error(ErrorCode::WindowOutOfRange,
                  "window [" + std::to_string(a) + ", " + std::to_string(b) +
                      "] leaves the rendered range");
    }
    const std::int64_t lo = std::max(a, s_.n_min());
    if (b < lo) return {};
    return prefix_[static_cast<std::size_t>(b - s_.n_min() + 1)] -
           prefix_[static_cast<std::size_t>(lo - s_.n_min())];
  }

  cplx average(std::int64_t k, std::int64_t n, Sidedness side) const {
    lcplx total;
    long double count;
    if (side == Sidedness::TwoSided) {
      total = sum(n - k, n + k);
      count = static_cast<long double>(2 * k + 1);
    } else {
      total = sum(n, n + k - 1);
      count = static_cast<long double>(k);
    }
    const lcplx avg = total / count;
    return {static_cast<double>(avg.real()), static_cast<double>(avg.imag())};
  }

 private:
  const DiscreteSignal& s_;
  std::vector<lcplx> prefix_;
};

class ContinuousWindows {
 public:
  explicit ContinuousWindows(const ContinuousSignal& s)
      : s_(s), cumulative_(cumulative_trapezoid(s.samples(), s.step())) {}

  /// int_{x0}^{u} of the piecewise-linear interpolant.
  lcplx primitive(double u) const {
    const double h = s_.step();
    const double pos = (u - s_.x0()) / h;
    const double last = static_cast<double>(s_.size() - 1);
    const double tol = 1e-9;
    if (pos > last + tol || (pos < -tol && s_.extension() == Extension::ValidOnly)) {
      throw Error(ErrorCode::WindowOutOfRange,
                  "window endpoint " + std::to_string(u) + " leaves the rendered range");
    }
    if (pos <= 0.0) return {};
    if (pos >= last) return cumulative_.back();
    const double rounded = std::round(pos);
    if (std::abs(pos - rounded) < tol) return cumulative_[static_cast<std::size_t>(rounded)];
    const auto j = static_cast<std::size_t>(std::floor(pos));
    const long double t = pos - static_cast<double>(j);
    const auto samples = s_.samples();
    const lcplx a(samples[j].real(), samples[j].imag());
    const lcplx b(samples[j + 1].real(), samples[j + 1].imag());
    return cumulative_[j] + static_cast<long double>(h) * (t * a + 0.5L * t * t * (b - a));
  }

  cplx average(double theta, double x, Sidedness side) const {
    lcplx avg;
    if (side == Sidedness::TwoSided) {
      avg = (primitive(x + theta) - primitive(x - theta)) / (2.0L * theta);
    } else {
      avg = (primitive(x + theta) - primitive(x)) / static_cast<long double>(theta);
    }
    return {static_cast<double>(avg.real()), static_cast<double>(avg.imag())};
  }

 private:
  const ContinuousSignal& s_;
  std::vector<lcplx> cumulative_;
};

std::int64_t integer_window(double length) {
  const double r = std::round(length);
  if (std::abs(length - r) > 1e-9 || r < 1.0) {
    throw Error(ErrorCode::InvalidArgument,
                "discrete window lengths must be positive integers, got " +
                    std::to_string(length));
  }
  return static_cast<std::int64_t>(r);
}

/// Running extremes with first-wins tie-break; callers visit shifts in
/// ascending order, so ties resolve to the smallest shift.
struct Tracker {
  WindowExtremes e;
  bool any = false;

  void add(cplx avg, double shift) {
    if (!any) {
      e.sup = e.inf = avg;
      e.argmax_re = e.argmin_re = e.argmax_im = e.argmin_im = shift;
      any = true;
    } else {
      if (avg.real() > e.sup.real()) {
        e.sup.real(avg.real());
        e.argmax_re = shift;
      }
      if (avg.real() < e.inf.real()) {
        e.inf.real(avg.real());
        e.argmin_re = shift;
      }
      if (avg.imag() > e.sup.imag()) {
        e.sup.imag(avg.imag());
        e.argmax_im = shift;
      }
      if (avg.imag() < e.inf.imag()) {
        e.inf.imag(avg.imag());
        e.argmin_im = shift;
      }
    }
    ++e.shift_count;
  }
};

/// Evaluate f(i) for every window, in parallel when more than one core is
/// available. Results land in their own slots, so order never matters.
template <class F>
std::vector<WindowExtremes> for_each_window(std::size_t count, F f) {
  std::vector<WindowExtremes> out(count);
  const unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  if (cores == 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::future<WindowExtremes>> jobs;
  jobs.reserve(count);
  for (std::size_t i = 0; i < count; ++i) jobs.push_back(std::async(std::launch::async, f, i));
  for (std::size_t i = 0; i < count; ++i) out[i] = jobs[i].get();
  return out;
}

void finish(CesaroSweep& sweep) {
  sweep.p_bar = sweep.windows.back().sup;
  sweep.p_lower = sweep.windows.back().inf;
  sweep.gap_nonincreasing = true;
  for (std::size_t i = 1; i < sweep.windows.size(); ++i) {
    if (sweep.windows[i].gap() > sweep.windows[i - 1].gap()) sweep.gap_nonincreasing = false;
  }
}

void check_stride(std::size_t stride) {
  if (stride < 1) throw Error(ErrorCode::InvalidArgument, "shift stride must be >= 1");
}

}  // namespace

double WindowExtremes::gap() const {
  return std::hypot(sup.real() - inf.real(), sup.imag() - inf.imag());
}

cplx window_average(const DiscreteSignal& signal, std::int64_t k, std::int64_t shift,
                    Sidedness sidedness) {
  if (sidedness == Sidedness::OneSided ? k < 1 : k < 0) {
    throw Error(ErrorCode::InvalidArgument, "window length out of range");
  }
  return DiscreteWindows(signal).average(k, shift, sidedness);
}

cplx window_average(const ContinuousSignal& signal, double theta, double shift,
                    Sidedness sidedness) {
  if (!(theta > 0.0)) throw Error(ErrorCode::InvalidArgument, "window length must be > 0");
  return ContinuousWindows(signal).average(theta, shift, sidedness);
}

std::vector<std::int64_t> admissible_shifts(const DiscreteSignal& signal, std::int64_t k,
                                            Sidedness sidedness, std::size_t stride) {
  check_stride(stride);
  const bool zero = signal.extension() == Extension::ZeroOutside;
  const bool two = sidedness == Sidedness::TwoSided;
  std::int64_t lo = 0;
  std::int64_t hi = 0;
  if (two) {
    lo = zero ? signal.n_min() - k : signal.n_min() + k;
    hi = signal.n_max() - k;
  } else {
    lo = zero ? signal.n_min() - k + 1 : signal.n_min();
    hi = signal.n_max() - k + 1;
  }
  if (lo > hi) {
    throw Error(ErrorCode::WindowOutOfRange,
                "window length " + std::to_string(k) + " does not fit the rendered range");
  }
  std::vector<std::int64_t> shifts;
  shifts.reserve(static_cast<std::size_t>((hi - lo) / static_cast<std::int64_t>(stride) + 1));
  for (std::int64_t n = lo; n <= hi; n += static_cast<std::int64_t>(stride)) shifts.push_back(n);
  return shifts;
}

std::vector<double> admissible_shifts(const ContinuousSignal& signal, double theta,
                                      Sidedness sidedness, std::size_t stride) {
  check_stride(stride);
  if (!(theta > 0.0)) throw Error(ErrorCode::InvalidArgument, "window length must be > 0");
  const bool zero = signal.extension() == Extension::ZeroOutside;
  const bool two = sidedness == Sidedness::TwoSided;
  const double span = signal.x_end() - signal.x0();
  // Offsets from x0 that keep the window admissible.
  double lo = 0.0;
  if (zero) {
    lo = -theta;
  } else if (two) {
    lo = theta;
  }
  const double hi = span - theta;
  const double unit = signal.step() * static_cast<double>(stride);
  const double eps = 1e-9;
  const auto m_lo = static_cast<std::int64_t>(std::ceil(lo / unit - eps));
  const auto m_hi = static_cast<std::int64_t>(std::floor(hi / unit + eps));
  if (m_lo > m_hi) {
    throw Error(ErrorCode::WindowOutOfRange,
                "window length " + std::to_string(theta) + " does not fit the rendered range");
  }
  std::vector<double> shifts;
  shifts.reserve(static_cast<std::size_t>(m_hi - m_lo + 1));
  for (std::int64_t m = m_lo; m <= m_hi; ++m) {
    shifts.push_back(signal.x0() + unit * static_cast<double>(m));
  }
  return shifts;
}

WindowExtremes shift_extremes(const DiscreteSignal& signal, std::int64_t k,
                              Sidedness sidedness, const std::vector<std::int64_t>& shifts) {
  if (shifts.empty()) throw Error(ErrorCode::EmptyGrid, "shift grid is empty");
  std::vector<std::int64_t> sorted = shifts;
  std::sort(sorted.begin(), sorted.end());
  const DiscreteWindows w(signal);
  Tracker t;
  t.e.length = static_cast<double>(k);
  for (std::int64_t n : sorted) t.add(w.average(k, n, sidedness), static_cast<double>(n));
  return t.e;
}

WindowExtremes shift_extremes(const ContinuousSignal& signal, double theta,
                              Sidedness sidedness, const std::vector<double>& shifts) {
  if (shifts.empty()) throw Error(ErrorCode::EmptyGrid, "shift grid is empty");
  std::vector<double> sorted = shifts;
  std::sort(sorted.begin(), sorted.end());
  const ContinuousWindows w(signal);
  Tracker t;
  t.e.length = theta;
  for (double x : sorted) t.add(w.average(theta, x, sidedness), x);
  return t.e;
}

CesaroSweep cesaro_sweep(const DiscreteSignal& signal, const WindowSchedule& schedule,
                         std::size_t shift_stride) {
  schedule.validate();
  check_stride(shift_stride);
  std::vector<std::int64_t> ks;
  for (double len : schedule.lengths) ks.push_back(integer_window(len));

  const DiscreteWindows w(signal);
  CesaroSweep sweep;
  sweep.sidedness = schedule.sidedness;
  sweep.shift_stride = shift_stride;
  sweep.continuous = false;
  // Validate every window up front so errors surface on the calling thread.
  for (std::int64_t k : ks) (void)admissible_shifts(signal, k, schedule.sidedness, 1);
  sweep.windows = for_each_window(ks.size(), [&](std::size_t i) {
    const std::int64_t k = ks[i];
    const auto shifts = admissible_shifts(signal, k, schedule.sidedness, shift_stride);
    Tracker t;
    t.e.length = static_cast<double>(k);
    for (std::int64_t n : shifts) t.add(w.average(k, n, schedule.sidedness), static_cast<double>(n));
    return t.e;
  });
  finish(sweep);
  return sweep;
}

CesaroSweep cesaro_sweep(const ContinuousSignal& signal, const WindowSchedule& schedule,
                         std::size_t shift_stride) {
  schedule.validate();
  check_stride(shift_stride);
  const ContinuousWindows w(signal);
  CesaroSweep sweep;
  sweep.sidedness = schedule.sidedness;
  sweep.shift_stride = shift_stride;
  sweep.continuous = true;
  for (double theta : schedule.lengths) {
    (void)admissible_shifts(signal, theta, schedule.sidedness, shift_stride);
  }
  sweep.windows = for_each_window(schedule.lengths.size(), [&](std::size_t i) {
    const double theta = schedule.lengths[i];
    const auto shifts = admissible_shifts(signal, theta, schedule.sidedness, shift_stride);
    Tracker t;
    t.e.length = theta;
    for (double x : shifts) t.add(w.average(theta, x, schedule.sidedness), x);
    return t.e;
  });
  finish(sweep);
  return sweep;
}

AcVerdict ac_verdict(const CesaroSweep& sweep, double tol) {
  if (sweep.windows.size() < 3) {
    throw Error(ErrorCode::InvalidArgument, "verdict needs at least 3 window lengths");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");

  const std::size_t n = sweep.windows.size();
  const double g1 = sweep.windows[n - 3].gap();
  const double g2 = sweep.windows[n - 2].gap();
  const double g3 = sweep.windows[n - 1].gap();
  const auto& last = sweep.windows.back();

  // Growth below a tenth of tol is resolution noise, not a trend.
  const double slack = 0.1 * tol;
  const bool settled = g3 <= tol && g2 <= g1 + slack && g3 <= g2 + slack;
  const bool apart = g1 >= 10.0 * tol && g2 >= 10.0 * tol && g3 >= 10.0 * tol;

  AcVerdict v;
  std::ostringstream notes;
  notes << "gaps over last 3 windows: " << g1 << ", " << g2 << ", " << g3;
  if (settled) {
    v.status = AcStatus::AlmostConvergent;
    v.limit = 0.5 * (sweep.p_bar + sweep.p_lower);
    v.uncertainty = g3;
  } else if (apart) {
    v.status = AcStatus::NotAlmostConvergent;
    v.uncertainty = g3;
    const double dre = last.sup.real() - last.inf.real();
    const double dim = last.sup.imag() - last.inf.imag();
    Witness w;
    w.window = last.length;
    w.gap = g3;
    if (dre >= dim) {
      w.shift_high = last.argmax_re;
      w.shift_low = last.argmin_re;
    } else {
      w.shift_high = last.argmax_im;
      w.shift_low = last.argmin_im;
    }
    v.witness = w;
  } else {
    v.status = AcStatus::Inconclusive;
    v.uncertainty = g3;
  }
  if (sweep.continuous) notes << "; sup taken over a shift grid with stride " << sweep.shift_stride;
  if (sweep.grid_relative) notes << "; grid-relative: data carries no smoothness information";
  v.notes = notes.str();
  return v;
}

namespace {

void check_kernel(const spectral::Kernel& kernel, double step) {
  if (kernel.weights.empty() || !kernel.nonnegative()) {
    throw Error(ErrorCode::InvalidArgument, "kernel must be nonempty and nonnegative");
  }
  if (std::abs(kernel.mass(step) - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "kernel must have unit mass");
  }
}

}  // namespace

double convolution_invariance_residual(const DiscreteSignal& signal,
                                       const spectral::Kernel& kernel,
                                       const WindowSchedule& schedule) {
  check_kernel(kernel, 0.0);
  const auto smoothed = spectral::convolve(signal, kernel);
  std::vector<cplx> diff(smoothed.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    const std::int64_t n = smoothed.n_min() + static_cast<std::int64_t>(i);
    diff[i] = signal.at(n) - smoothed.values()[i];
  }
  const DiscreteSignal d(smoothed.n_min(), std::move(diff));
  const auto sweep = cesaro_sweep(d, schedule);
  return std::max(std::abs(sweep.p_bar), std::abs(sweep.p_lower));
}

double convolution_invariance_residual(const ContinuousSignal& signal,
                                       const spectral::Kernel& kernel,
                                       const WindowSchedule& schedule) {
  check_kernel(kernel, signal.step());
  const auto smoothed = spectral::convolve(signal, kernel);
  const auto first =
      static_cast<std::size_t>(std::llround((smoothed.x0() - signal.x0()) / signal.step()));
  std::vector<cplx> diff(smoothed.size());
  for (std::size_t i = 0; i < diff.size(); ++i) {
    diff[i] = signal.samples()[first + i] - smoothed.samples()[i];
  }
  const ContinuousSignal d(smoothed.x0(), signal.step(), std::move(diff));
  const auto sweep = cesaro_sweep(d, schedule);
  return std::max(std::abs(sweep.p_bar), std::abs(sweep.p_lower));
}

}  // namespace acsum::cesaro
