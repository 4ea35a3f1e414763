#include "acsum/tauberian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "acsum/error.hpp"

namespace acsum::tauber {

namespace {

using lcplx = std::complex<long double>;

cplx narrow(lcplx v) {
  return {static_cast<double>(v.real()), static_cast<double>(v.imag())};
}

double sup_abs(std::span<const cplx> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

// ---------------------------------------------------------------------------
// Coefficient streams

CoefficientStream CoefficientStream::from_values(std::vector<cplx> values,
                                                 std::optional<double> bound) {
  if (values.empty()) throw Error(ErrorCode::InvalidArgument, "empty coefficient stream");
  CoefficientStream s;
  const double observed = sup_abs(values);
  if (bound && *bound < observed * (1.0 - 1e-12)) {
    throw Error(ErrorCode::InvalidArgument, "declared bound is below max |a_n|");
  }
  s.bound_ = bound.value_or(observed);
  s.values_ = std::move(values);
  return s;
}

CoefficientStream CoefficientStream::from_function(std::function<cplx(std::size_t)> a,
                                                   double bound) {
  if (!a) throw Error(ErrorCode::InvalidArgument, "empty coefficient function");
  if (!(bound >= 0.0) || !std::isfinite(bound)) {
    throw Error(ErrorCode::InvalidArgument, "bound must be finite and >= 0");
  }
  CoefficientStream s;
  s.fn_ = std::move(a);
  s.bound_ = bound;
  return s;
}

CoefficientStream CoefficientStream::from_generator(const GeneratorSpec& spec,
                                                    std::size_t count) {
  if (count == 0) throw Error(ErrorCode::InvalidArgument, "need at least one coefficient");
  const auto rendered =
      render_discrete(spec, 0, static_cast<std::int64_t>(count) - 1, Extension::ValidOnly);
  const auto v = rendered.values();
  return from_values(std::vector<cplx>(v.begin(), v.end()), rendered.bound());
}

cplx CoefficientStream::at(std::size_t n) const {
  if (fn_) return fn_(n);
  if (n >= values_.size()) {
    throw Error(ErrorCode::InsufficientCoefficients,
                "coefficient " + std::to_string(n) + " requested from a stream of " +
                    std::to_string(values_.size()));
  }
  return values_[n];
}

std::optional<std::size_t> CoefficientStream::length() const {
  if (fn_) return std::nullopt;
  return values_.size();
}

std::vector<cplx> CoefficientStream::take(std::size_t count) const {
  if (!fn_ && count > values_.size()) {
    throw Error(ErrorCode::InsufficientCoefficients,
                std::to_string(count) + " coefficients requested from a stream of " +
                    std::to_string(values_.size()));
  }
  if (!fn_) return {values_.begin(), values_.begin() + static_cast<std::ptrdiff_t>(count)};
  std::vector<cplx> out(count);
  for (std::size_t n = 0; n < count; ++n) out[n] = fn_(n);
  return out;
}

std::vector<cplx> CoefficientStream::partial_sums(std::size_t count) const {
  const auto a = take(count);
  std::vector<cplx> s(count);
  lcplx running;
  for (std::size_t n = 0; n < count; ++n) {
    running += lcplx(a[n].real(), a[n].imag());
    s[n] = narrow(running);
  }
  return s;
}

bool bounded_below(const CoefficientStream& a, double c, std::size_t count) {
  for (const auto& v : a.take(count)) {
    if (v.real() < -c || v.imag() < -c) return false;
  }
  return true;
}

bool bounded_below(const ContinuousSignal& psi, double c) {
  for (const auto& v : psi.samples()) {
    if (v.real() < -c || v.imag() < -c) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Mean sweeps

std::vector<double> abel_schedule(int first, int last) {
  if (first < 1 || last < first) throw Error(ErrorCode::InvalidArgument, "bad Abel schedule");
  std::vector<double> x;
  for (int j = first; j <= last; ++j) x.push_back(1.0 - std::ldexp(1.0, -j));
  return x;
}

std::vector<double> laplace_schedule(int first, int last) {
  if (last < first) throw Error(ErrorCode::InvalidArgument, "bad Laplace schedule");
  std::vector<double> x;
  for (int j = first; j <= last; ++j) x.push_back(std::ldexp(1.0, -j));
  return x;
}

std::optional<cplx> extrapolate_to_zero(const std::vector<double>& h,
                                        const std::vector<cplx>& v) {
  if (h.size() != v.size()) throw Error(ErrorCode::InvalidArgument, "size mismatch");
  if (h.empty()) return std::nullopt;
  const std::size_t m = std::min<std::size_t>(3, h.size());
  const std::size_t off = h.size() - m;
  // Neville's scheme evaluated at 0.
  std::vector<cplx> p(v.begin() + static_cast<std::ptrdiff_t>(off), v.end());
  for (std::size_t level = 1; level < m; ++level) {
    for (std::size_t i = 0; i + level < m; ++i) {
      const double hi = h[off + i];
      const double hj = h[off + i + level];
      if (hi == hj) throw Error(ErrorCode::InvalidArgument, "repeated abscissa");
      p[i] = (hj * p[i] - hi * p[i + 1]) / (hj - hi);
    }
  }
  return p[0];
}

MeanSweep abel_sweep(const CoefficientStream& a, const std::vector<double>& x_schedule,
                     double tail_eps) {
  if (x_schedule.empty()) throw Error(ErrorCode::InvalidArgument, "empty Abel schedule");
  if (!(tail_eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "tail eps must be > 0");
  MeanSweep sweep;
  sweep.method = MeanMethod::Abel;
  std::vector<double> h;
  for (std::size_t i = 0; i < x_schedule.size(); ++i) {
    const double x = x_schedule[i];
    if (!(x > 0.0 && x < 1.0)) throw Error(ErrorCode::InvalidArgument, "Abel x must lie in (0,1)");
    if (i > 0 && !(x > x_schedule[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "Abel abscissas must increase toward 1");
    }
    const double b = a.bound();
    std::size_t m = 0;
    if (b > tail_eps) m = static_cast<std::size_t>(std::ceil(std::log(tail_eps / b) / std::log(x)));
    if (a.length() && *a.length() < m + 1) {
      throw Error(ErrorCode::InsufficientCoefficients,
                  "x=" + std::to_string(x) + " needs " + std::to_string(m + 1) +
                      " coefficients, stream has " + std::to_string(*a.length()));
    }
    lcplx sum;
    long double power = 1.0L;
    for (std::size_t n = 0; n <= m; ++n) {
      const cplx an = a.at(n);
      sum += power * lcplx(an.real(), an.imag());
      power *= x;
    }
    sweep.abscissas.push_back(x);
    sweep.values.push_back(narrow(sum * static_cast<long double>(1.0 - x)));
    sweep.tail_bounds.push_back(b * std::pow(x, static_cast<double>(m + 1)));
    sweep.terms.push_back(m + 1);
    h.push_back(1.0 - x);
  }
  sweep.extrapolated_limit = extrapolate_to_zero(h, sweep.values);
  return sweep;
}

MeanSweep laplace_sweep(const ContinuousSignal& psi, const std::vector<double>& x_schedule,
                        double tail_tol) {
  if (x_schedule.empty()) throw Error(ErrorCode::InvalidArgument, "empty Laplace schedule");
  if (std::abs(psi.x0()) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "Laplace sweep needs samples starting at t = 0");
  }
  const double t_end = psi.x_end();
  const double h = psi.step();
  const auto samples = psi.samples();
  MeanSweep sweep;
  sweep.method = MeanMethod::Laplace;
  for (std::size_t i = 0; i < x_schedule.size(); ++i) {
    const double x = x_schedule[i];
    if (!(x > 0.0)) throw Error(ErrorCode::InvalidArgument, "Laplace x must be > 0");
    if (i > 0 && !(x < x_schedule[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "Laplace abscissas must decrease toward 0");
    }
    const double tail = psi.bound() * std::exp(-x * t_end);
    if (tail > tail_tol * x) {
      throw Error(ErrorCode::TailNotControlled,
                  "x=" + std::to_string(x) + ": B e^{-xT} = " + std::to_string(tail) +
                      " exceeds tail_tol * x; render further than T=" + std::to_string(t_end));
    }
    lcplx acc;
    const long double decay = std::exp(-static_cast<long double>(x) * h);
    long double weight = 1.0L;
    for (std::size_t j = 0; j < samples.size(); ++j) {
      const long double c = (j == 0 || j + 1 == samples.size()) ? 0.5L : 1.0L;
      acc += c * weight * lcplx(samples[j].real(), samples[j].imag());
      weight *= decay;
    }
    sweep.abscissas.push_back(x);
    sweep.values.push_back(narrow(acc * static_cast<long double>(h * x)));
    sweep.tail_bounds.push_back(tail);
    sweep.terms.push_back(samples.size());
  }
  sweep.extrapolated_limit = extrapolate_to_zero(sweep.abscissas, sweep.values);
  return sweep;
}

AcVerdict oac_verdict(const std::vector<cplx>& values, const OacConfig& config) {
  const DiscreteSignal s(0, values);
  const auto schedule =
      WindowSchedule::geometric(config.k_min, config.k_max, config.growth, Sidedness::OneSided);
  return cesaro::ac_verdict(cesaro::cesaro_sweep(s, schedule), config.tol);
}

ResidueEstimate residue_oac_estimate(const CoefficientStream& a,
                                     const std::vector<double>& x_schedule,
                                     const OacConfig& config) {
  ResidueEstimate r;
  r.sweep = abel_sweep(a, x_schedule);
  r.alpha = *r.sweep.extrapolated_limit;
  std::size_t count = config.length;
  if (a.length()) count = std::min(count, *a.length());
  r.cesaro = oac_verdict(a.take(count), config);
  if (r.cesaro.status == AcStatus::AlmostConvergent) {
    r.agreement = std::abs(r.alpha - *r.cesaro.limit);
  }
  return r;
}

FatouReport fatou_check(const CoefficientStream& a, cplx f1, double tol,
                        const FatouConfig& config) {
  const std::size_t count = std::max(config.oac_length, config.partial_index) + 1;
  const auto coeffs = a.take(count);
  const auto sums = a.partial_sums(count);

  const double peak = sup_abs(coeffs);
  const double tail = sup_abs(std::span<const cplx>(coeffs).subspan(count / 2));
  if (tail > config.decay_ratio * peak) {
    throw Error(ErrorCode::HypothesisViolated,
                "coefficients do not decay: tail sup " + std::to_string(tail) + " vs sup " +
                    std::to_string(peak));
  }

  FatouReport r;
  r.partial_index = config.partial_index;
  r.partial_sum = sums[config.partial_index];
  r.partial_error = std::abs(r.partial_sum - f1);

  OacConfig oac;
  oac.length = config.oac_length + 1;
  oac.k_max = config.oac_k_max;
  oac.tol = config.oac_tol;
  r.oac = oac_verdict(std::vector<cplx>(sums.begin(), sums.begin() +
                                                          static_cast<std::ptrdiff_t>(oac.length)),
                      oac);
  r.oac_error = r.oac.limit ? std::abs(*r.oac.limit - f1) : std::abs(f1) + 1.0;

  for (std::size_t n = count / 2; n + 1 < count; ++n) {
    r.increment_tail = std::max(r.increment_tail, std::abs(sums[n + 1] - sums[n]));
  }
  r.pass = r.partial_error <= tol && r.oac.status == AcStatus::AlmostConvergent &&
           r.oac_error <= config.oac_tol && r.increment_tail <= tol;
  return r;
}

// ---------------------------------------------------------------------------
// Weak* convergence

namespace {

void check_floor(const spectral::Kernel& effective, double kernel_floor) {
  constexpr int kProbes = 2048;
  double lowest = std::numeric_limits<double>::infinity();
  double where = 0.0;
  for (int i = 0; i < kProbes; ++i) {
    const double f = -0.5 + static_cast<double>(i) / kProbes;
    const double m = spectral::kernel_transform_magnitude(effective, f);
    if (m < lowest) {
      lowest = m;
      where = f;
    }
  }
  if (lowest < kernel_floor) {
    std::ostringstream msg;
    msg << "kernel transform drops to " << lowest << " at " << where
        << " cycles per sample (floor " << kernel_floor << ")";
    throw Error(ErrorCode::KernelVanishes, msg.str());
  }
}

/// Stabilisation test over the last quarter of the evaluated values.
AcVerdict stabilisation(const std::vector<double>& shifts, const std::vector<cplx>& values,
                        double tol, const char* what) {
  const std::size_t n = values.size();
  const std::size_t q = std::max<std::size_t>(1, (n + 3) / 4);
  const std::size_t from = n - q;
  cplx mean{};
  for (std::size_t i = from; i < n; ++i) mean += values[i];
  mean /= static_cast<double>(q);
  double spread = 0.0;
  std::size_t far = from;
  for (std::size_t i = from; i < n; ++i) {
    const double d = std::abs(values[i] - mean);
    if (d > spread) {
      spread = d;
      far = i;
    }
  }
  AcVerdict v;
  v.uncertainty = spread;
  std::ostringstream notes;
  notes << what << " over the last " << q << " of " << n << " shifts: spread " << spread;
  if (spread <= tol) {
    v.status = AcStatus::AlmostConvergent;
    v.limit = mean;
  } else if (spread >= 10.0 * tol) {
    v.status = AcStatus::NotAlmostConvergent;
    std::size_t other = from;
    double gap = 0.0;
    for (std::size_t i = from; i < n; ++i) {
      const double d = std::abs(values[i] - values[far]);
      if (d > gap) {
        gap = d;
        other = i;
      }
    }
    v.witness = Witness{0.0, shifts[far], shifts[other], gap};
  } else {
    v.status = AcStatus::Inconclusive;
  }
  v.notes = notes.str();
  return v;
}

}  // namespace

AcVerdict weak_star_verdict(const DiscreteSignal& psi, const spectral::Kernel& kernel,
                            const std::vector<std::int64_t>& shifts, double tol,
                            double kernel_floor) {
  if (kernel.weights.empty()) throw Error(ErrorCode::InvalidArgument, "empty kernel");
  if (std::abs(kernel.mass() - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "kernel must have unit mass");
  }
  if (shifts.size() < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 shifts");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
  check_floor(kernel, kernel_floor);

  std::vector<cplx> values;
  std::vector<double> where;
  for (std::int64_t x : shifts) {
    cplx acc{};
    for (std::size_t j = 0; j < kernel.weights.size(); ++j) {
      acc += kernel.weights[j] * psi.at(x - (kernel.offset_min + static_cast<std::int64_t>(j)));
    }
    values.push_back(acc);
    where.push_back(static_cast<double>(x));
  }
  return stabilisation(where, values, tol, "f*psi");
}

AcVerdict weak_star_verdict(const ContinuousSignal& psi, const spectral::Kernel& kernel,
                            const std::vector<double>& shifts, double tol,
                            double kernel_floor) {
  if (kernel.weights.empty()) throw Error(ErrorCode::InvalidArgument, "empty kernel");
  const double h = psi.step();
  if (std::abs(kernel.mass(h) - 1.0) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "kernel must have unit trapezoid mass");
  }
  if (shifts.size() < 4) throw Error(ErrorCode::InvalidArgument, "need at least 4 shifts");
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");

  // Quadrature weights folded into the kernel: a discrete kernel on the grid.
  spectral::Kernel effective = kernel;
  for (std::size_t j = 0; j < effective.weights.size(); ++j) {
    const bool end = effective.weights.size() > 1 && (j == 0 || j + 1 == effective.weights.size());
    effective.weights[j] *= (end ? 0.5 : 1.0) * h;
  }
  check_floor(effective, kernel_floor);

  const auto samples = psi.samples();
  const auto n = static_cast<std::int64_t>(samples.size());
  std::vector<cplx> values;
  for (double x : shifts) {
    const double pos = (x - psi.x0()) / h;
    const double idx = std::round(pos);
    if (std::abs(pos - idx) > 1e-6) {
      throw Error(ErrorCode::InvalidArgument, "shift " + std::to_string(x) + " is off the grid");
    }
    cplx acc{};
    for (std::size_t j = 0; j < effective.weights.size(); ++j) {
      const std::int64_t i = static_cast<std::int64_t>(idx) -
                             (effective.offset_min + static_cast<std::int64_t>(j));
      if (i >= n || (i < 0 && psi.extension() == Extension::ValidOnly)) {
        throw Error(ErrorCode::WindowOutOfRange,
                    "kernel at shift " + std::to_string(x) + " leaves the rendered range");
      }
      if (i >= 0) acc += effective.weights[j] * samples[static_cast<std::size_t>(i)];
    }
    values.push_back(acc);
  }
  return stabilisation(shifts, values, tol, "f*psi");
}

// ---------------------------------------------------------------------------
// Oscillation

namespace {

double oscillation(std::span<const cplx> v, const std::vector<double>& x, std::size_t d_max,
                   double t) {
  bool any = false;
  double sup = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (std::abs(x[i]) < t) continue;
    any = true;
    for (std::size_t d = 1; d <= d_max && i + d < v.size(); ++d) {
      if (std::abs(x[i + d]) < t) continue;
      sup = std::max(sup, std::abs(v[i] - v[i + d]));
    }
  }
  if (!any) {
    throw Error(ErrorCode::RangeTooShort,
                "no rendered point satisfies |x| >= " + std::to_string(t));
  }
  return sup;
}

}  // namespace

double oscillation_modulus(const DiscreteSignal& psi, double u, double t) {
  if (!(u > 0.0)) throw Error(ErrorCode::InvalidArgument, "u must be > 0");
  std::vector<double> x(psi.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = static_cast<double>(psi.n_min() + static_cast<std::int64_t>(i));
  }
  return oscillation(psi.values(), x, static_cast<std::size_t>(std::floor(u + 1e-9)), t);
}

double oscillation_modulus(const ContinuousSignal& psi, double u, double t) {
  if (!(u > 0.0)) throw Error(ErrorCode::InvalidArgument, "u must be > 0");
  std::vector<double> x(psi.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = psi.x(i);
  return oscillation(psi.samples(), x,
                     static_cast<std::size_t>(std::floor(u / psi.step() + 1e-9)), t);
}

// ---------------------------------------------------------------------------
// Chain report

namespace {

/// Index-space view shared by the discrete and continuous chains.
struct Grid {
  std::span<const cplx> v;
  double origin = 0.0;  // position of index 0
  double step = 1.0;
  bool right_only = true;

  double pos(std::size_t i) const { return origin + step * static_cast<double>(i); }
};

/// Tail indices: second half (right end) or outer quarters (both ends).
std::vector<std::size_t> tail_indices(const Grid& g) {
  const std::size_t n = g.v.size();
  std::vector<std::size_t> idx;
  if (g.right_only) {
    for (std::size_t i = n / 2; i < n; ++i) idx.push_back(i);
  } else {
    for (std::size_t i = 0; i < n / 4; ++i) idx.push_back(i);
    for (std::size_t i = n - n / 4; i < n; ++i) idx.push_back(i);
  }
  return idx;
}

AcVerdict ordinary_limit(const Grid& g, double tol) {
  const auto idx = tail_indices(g);
  if (idx.empty()) throw Error(ErrorCode::RangeTooShort, "signal too short for a tail");
  std::vector<double> where;
  std::vector<cplx> values;
  for (std::size_t i : idx) {
    where.push_back(g.pos(i));
    values.push_back(g.v[i]);
  }
  // Every tail sample counts, not only the last quarter.
  cplx mean{};
  for (const auto& v : values) mean += v;
  mean /= static_cast<double>(values.size());
  double spread = 0.0;
  std::size_t far = 0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double d = std::abs(values[i] - mean);
    if (d > spread) {
      spread = d;
      far = i;
    }
  }
  AcVerdict v;
  v.uncertainty = spread;
  v.notes = "tail spread " + std::to_string(spread);
  if (spread <= tol) {
    v.status = AcStatus::AlmostConvergent;
    v.limit = mean;
  } else if (spread >= 10.0 * tol) {
    v.status = AcStatus::NotAlmostConvergent;
    std::size_t other = 0;
    double gap = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double d = std::abs(values[i] - values[far]);
      if (d > gap) {
        gap = d;
        other = i;
      }
    }
    v.witness = Witness{0.0, where[far], where[other], gap};
  } else {
    v.status = AcStatus::Inconclusive;
  }
  return v;
}

/// Kernel-valid indices spaced geometrically toward the tail(s); the last
/// quarter of the list covers the final octave.
std::vector<std::size_t> tail_schedule(const Grid& g, const spectral::Kernel& kernel,
                                       const ChainConfig& config) {
  const auto n = static_cast<std::int64_t>(g.v.size());
  const std::int64_t lo = std::max<std::int64_t>(0, kernel.offset_max());
  const std::int64_t hi = std::min<std::int64_t>(n - 1, n - 1 + kernel.offset_min);
  const std::size_t steps = config.points_per_octave * config.octaves;
  std::vector<std::size_t> out;
  auto push = [&](std::int64_t i) {
    i = std::clamp(i, lo, hi);
    const auto u = static_cast<std::size_t>(i);
    if (std::find(out.begin(), out.end(), u) == out.end()) out.push_back(u);
  };
  if (lo > hi) throw Error(ErrorCode::RangeTooShort, "kernel wider than the signal");
  for (std::size_t s = 0; s <= steps; ++s) {
    const double frac = std::exp2(-static_cast<double>(steps - s) /
                                  static_cast<double>(config.points_per_octave));
    if (g.right_only) {
      push(static_cast<std::int64_t>(std::llround(frac * static_cast<double>(n - 1))));
    } else {
      const double half = 0.5 * static_cast<double>(n - 1);
      push(static_cast<std::int64_t>(std::llround(half - frac * half)));
      push(static_cast<std::int64_t>(std::llround(half + frac * half)));
    }
  }
  return out;
}

AcVerdict wstar(const Grid& g, const spectral::Kernel& kernel, const ChainConfig& config,
                double h) {
  const auto idx = tail_schedule(g, kernel, config);
  std::vector<cplx> samples(g.v.begin(), g.v.end());
  if (h > 0.0) {
    const ContinuousSignal s(g.origin, h, samples);
    std::vector<double> shifts;
    for (std::size_t i : idx) shifts.push_back(s.x(i));
    return weak_star_verdict(s, kernel, shifts, config.tol, config.kernel_floor);
  }
  const auto n0 = static_cast<std::int64_t>(std::llround(g.origin));
  const DiscreteSignal s(n0, samples);
  std::vector<std::int64_t> shifts;
  for (std::size_t i : idx) shifts.push_back(n0 + static_cast<std::int64_t>(i));
  return weak_star_verdict(s, kernel, shifts, config.tol, config.kernel_floor);
}

bool positive(const AcVerdict& v) {
  return v.status == AcStatus::AlmostConvergent && v.limit.has_value();
}

bool same_limit(const AcVerdict& a, const AcVerdict& b, double tol) {
  return std::abs(*a.limit - *b.limit) <= a.uncertainty + b.uncertainty + tol;
}

void check_chain(ChainReport& r, double tol) {
  auto require = [&](const AcVerdict& earlier, const AcVerdict& later, const char* what) {
    if (!positive(earlier)) return;
    if (!positive(later)) {
      r.violations.push_back(std::string(what) + ": later verdict not positive");
    } else if (!same_limit(earlier, later, tol)) {
      r.violations.push_back(std::string(what) + ": limits disagree");
    }
  };
  require(r.c_verdict, r.wstar_verdict, "c => w*c");
  require(r.c_verdict, r.ac_verdict, "c => ac");
  require(r.wstar_verdict, r.ac_verdict, "w*c => ac");
  const bool differences_decay =
      !r.difference_decay.empty() &&
      std::all_of(r.difference_decay.begin(), r.difference_decay.end(),
                  [](const DifferenceDecay& d) { return d.decays; });
  if (positive(r.ac_verdict) && differences_decay) {
    require(r.ac_verdict, r.wstar_verdict, "ac + decaying differences => w*c");
  }
  r.consistency = r.violations.empty();
}

/// Powers of two (times `unit`) from 2 * unit up to an eighth of the span.
WindowSchedule chain_windows(std::size_t samples, double unit) {
  const double span = unit * static_cast<double>(samples - 1);
  WindowSchedule w;
  w.sidedness = Sidedness::TwoSided;
  for (double k = 2.0 * unit; k <= span / 8.0; k *= 2.0) w.lengths.push_back(k);
  if (w.lengths.size() < 3) {
    throw Error(ErrorCode::RangeTooShort, "signal too short for three Cesaro windows");
  }
  return w;
}

}  // namespace

ChainReport chain_report(const DiscreteSignal& psi, const ChainConfig& config) {
  const Grid g{psi.values(), static_cast<double>(psi.n_min()), 1.0, psi.n_min() >= 0};
  ChainReport r;
  r.c_verdict = ordinary_limit(g, config.tol);
  r.wstar_verdict = wstar(g, config.kernel, config, 0.0);
  const auto base = psi.with_extension(Extension::ValidOnly);
  r.ac_verdict = cesaro::ac_verdict(cesaro::cesaro_sweep(base, chain_windows(psi.size(), 1.0)),
                                    config.tol);

  for (double s : config.difference_shifts) {
    const auto shift = static_cast<std::int64_t>(std::llround(s));
    if (shift < 1 || static_cast<std::size_t>(shift) >= psi.size()) {
      throw Error(ErrorCode::InvalidArgument, "difference shift out of range");
    }
    std::vector<cplx> diff(psi.size() - static_cast<std::size_t>(shift));
    const auto v = psi.values();
    for (std::size_t i = 0; i < diff.size(); ++i) {
      diff[i] = v[i + static_cast<std::size_t>(shift)] - v[i];
    }
    const Grid dg{diff, g.origin, 1.0, g.right_only};
    DifferenceDecay d;
    d.shift = s;
    d.verdict = wstar(dg, config.kernel, config, 0.0);
    d.decays = positive(d.verdict) && std::abs(*d.verdict.limit) <= config.tol;
    r.difference_decay.push_back(std::move(d));
  }

  const double t = g.right_only
                       ? static_cast<double>(psi.n_min()) + 0.5 * static_cast<double>(psi.size())
                       : 0.5 * static_cast<double>(std::min(std::abs(psi.n_min()),
                                                            std::abs(psi.n_max())));
  r.oscillation_modulus = oscillation_modulus(psi, config.oscillation_width, t);
  check_chain(r, config.tol);
  return r;
}

ChainReport chain_report(const ContinuousSignal& psi, const ChainConfig& config) {
  const double h = psi.step();
  const Grid g{psi.samples(), psi.x0(), h, psi.x0() >= 0.0};
  const spectral::Kernel kernel = config.kernel.normalized(h);
  ChainReport r;
  r.c_verdict = ordinary_limit(g, config.tol);
  r.wstar_verdict = wstar(g, kernel, config, h);
  const auto base = psi.with_extension(Extension::ValidOnly);
  r.ac_verdict =
      cesaro::ac_verdict(cesaro::cesaro_sweep(base, chain_windows(psi.size(), h)), config.tol);

  for (double s : config.difference_shifts) {
    const auto shift = static_cast<std::size_t>(std::llround(s / h));
    if (shift < 1 || shift >= psi.size()) {
      throw Error(ErrorCode::InvalidArgument, "difference shift out of range");
    }
    std::vector<cplx> diff(psi.size() - shift);
    const auto v = psi.samples();
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = v[i + shift] - v[i];
    const Grid dg{diff, g.origin, h, g.right_only};
    DifferenceDecay d;
    d.shift = h * static_cast<double>(shift);
    d.verdict = wstar(dg, kernel, config, h);
    d.decays = positive(d.verdict) && std::abs(*d.verdict.limit) <= config.tol;
    r.difference_decay.push_back(std::move(d));
  }

  const double t = g.right_only ? psi.x0() + 0.5 * (psi.x_end() - psi.x0())
                                : 0.5 * std::min(std::abs(psi.x0()), std::abs(psi.x_end()));
  r.oscillation_modulus = oscillation_modulus(psi, config.oscillation_width, t);
  check_chain(r, config.tol);
  return r;
}

// ---------------------------------------------------------------------------
// Primitive

PrimitiveReport primitive_oac_check(const ContinuousSignal& psi, cplx l0, double tol,
                                    const PrimitiveConfig& config) {
  if (std::abs(psi.x0()) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "primitive check needs samples starting at t = 0");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be > 0");
  const auto v = psi.samples();
  const double h = psi.step();
  std::vector<cplx> primitive(v.size());
  lcplx running;
  for (std::size_t j = 1; j < v.size(); ++j) {
    running += static_cast<long double>(0.5 * h) *
               (lcplx(v[j - 1].real(), v[j - 1].imag()) + lcplx(v[j].real(), v[j].imag()));
    primitive[j] = narrow(running);
  }
  const ContinuousSignal big_psi(psi.x0(), h, primitive);
  const auto schedule = WindowSchedule::geometric(config.theta_min, config.theta_max,
                                                  config.growth, Sidedness::OneSided);

  PrimitiveReport r;
  r.oac = cesaro::ac_verdict(cesaro::cesaro_sweep(big_psi, schedule, config.shift_stride), tol);
  if (r.oac.status == AcStatus::NotAlmostConvergent) {
    throw Error(ErrorCode::HypothesisViolated,
                "primitive is not one-sidedly almost convergent; the declared transform "
                "cannot be analytic at 0");
  }
  r.limit_error = r.oac.limit ? std::abs(*r.oac.limit - l0) : std::abs(l0) + 1.0;
  r.tail_decays = sup_abs(v.subspan(v.size() / 2)) <= tol;
  if (r.tail_decays) r.primitive_error = std::abs(primitive.back() - l0);
  r.pass = r.oac.status == AcStatus::AlmostConvergent && r.limit_error <= tol &&
           (!r.primitive_error || *r.primitive_error <= tol);
  return r;
}

}  // namespace acsum::tauber
