#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "acsum/cesaro.hpp"
#include "acsum/generators.hpp"
#include "acsum/signal.hpp"
#include "acsum/spectral.hpp"
#include "acsum/verdict.hpp"

/// Abel and Laplace mean sweeps, and the c => w*c => ac chain.
namespace acsum::tauber {

/// Coefficients a_0, a_1, ... with a declared bound B >= sup |a_n|. Finite
/// streams raise InsufficientCoefficients when read past their end.
class CoefficientStream {
 public:
  static CoefficientStream from_values(std::vector<cplx> values,
                                       std::optional<double> bound = std::nullopt);
  /// Unbounded stream; `bound` must dominate every |a(n)| that is read.
  static CoefficientStream from_function(std::function<cplx(std::size_t)> a, double bound);
  /// a_n = evaluate(spec, n) for n < count (PartialSums rendered cumulatively).
  static CoefficientStream from_generator(const GeneratorSpec& spec, std::size_t count);

  cplx at(std::size_t n) const;
  /// nullopt for function-backed streams.
  std::optional<std::size_t> length() const;
  double bound() const { return bound_; }
  std::vector<cplx> take(std::size_t count) const;
  /// Partial sums s_n = a_0 + ... + a_n for n < count.
  std::vector<cplx> partial_sums(std::size_t count) const;

 private:
  std::vector<cplx> values_;
  std::function<cplx(std::size_t)> fn_;
  double bound_ = 0.0;
};

/// Componentwise re a_n >= -c and im a_n >= -c for n < count.
bool bounded_below(const CoefficientStream& a, double c, std::size_t count);
bool bounded_below(const ContinuousSignal& psi, double c);

enum class MeanMethod { Abel, Laplace };

struct MeanSweep {
  MeanMethod method = MeanMethod::Abel;
  std::vector<double> abscissas;
  std::vector<cplx> values;
  std::vector<double> tail_bounds;  // certified truncation error per abscissa
  std::vector<std::size_t> terms;   // coefficients (Abel) or samples (Laplace) used
  std::optional<cplx> extrapolated_limit;
};

/// x_j = 1 - 2^{-j}, j = first..last.
std::vector<double> abel_schedule(int first = 1, int last = 12);
/// x_j = 2^{-j}, j = first..last.
std::vector<double> laplace_schedule(int first = 1, int last = 7);

/// Value at h = 0 of the polynomial through the last (up to) 3 points
/// (h_i, v_i). nullopt for an empty input.
std::optional<cplx> extrapolate_to_zero(const std::vector<double>& h,
                                        const std::vector<cplx>& v);

/// (1-x) sum_{n <= M(x)} a_n x^n with M(x) = ceil(ln(eps/B) / ln x), so the
/// neglected tail of (1-x)f(x) is at most B x^M <= eps. Abscissas must
/// increase strictly toward 1.
MeanSweep abel_sweep(const CoefficientStream& a, const std::vector<double>& x_schedule,
                     double tail_eps = 1e-12);

/// x * (trapezoid integral of psi(t) e^{-xt} over [0, T]); psi must start at
/// t = 0. Needs B e^{-xT} <= tail_tol * x for every x (TailNotControlled).
/// Abscissas must decrease strictly toward 0.
MeanSweep laplace_sweep(const ContinuousSignal& psi, const std::vector<double>& x_schedule,
                        double tail_tol = 1e-3);

/// One-sided Cesaro analysis of a stream over [0, length - 1].
struct OacConfig {
  std::size_t length = std::size_t{1} << 17;
  double k_min = 2.0;
  double k_max = 16384.0;
  double growth = 2.0;
  double tol = 1e-3;
};

AcVerdict oac_verdict(const std::vector<cplx>& values, const OacConfig& config);

struct ResidueEstimate {
  cplx alpha;
  MeanSweep sweep;
  AcVerdict cesaro;
  /// |alpha - cesaro limit| when the Cesaro route is positive.
  std::optional<double> agreement;
};

/// Extrapolated lim (1-x) f(x) against the one-sided Cesaro limit of a_n.
ResidueEstimate residue_oac_estimate(const CoefficientStream& a,
                                     const std::vector<double>& x_schedule,
                                     const OacConfig& config = {});

struct FatouConfig {
  std::size_t partial_index = 64;       // N in |s_N - f(1)|
  std::size_t oac_length = std::size_t{1} << 16;
  double oac_k_max = 16384.0;
  double oac_tol = 1e-3;
  double decay_ratio = 1e-2;            // tail sup |a_n| relative to sup |a_n|
};

struct FatouReport {
  std::size_t partial_index = 0;
  cplx partial_sum;
  double partial_error = 0.0;
  AcVerdict oac;
  double oac_error = 0.0;
  double increment_tail = 0.0;  // sup |s_{n+1} - s_n| on the second half
  bool pass = false;
};

/// Sum of a convergent-at-1 power series three ways. Throws
/// HypothesisViolated when a_n visibly fails to decay.
FatouReport fatou_check(const CoefficientStream& a, cplx f1, double tol,
                        const FatouConfig& config = {});

/// |f^| >= floor across the sampled frequency band, else KernelVanishes.
/// Positive (AlmostConvergent status, limit = mean) when (f*psi) over the
/// last quarter of the shift schedule stays within tol of its mean;
/// NotAlmostConvergent when it spreads by >= 10 tol; else Inconclusive.
AcVerdict weak_star_verdict(const DiscreteSignal& psi, const spectral::Kernel& kernel,
                            const std::vector<std::int64_t>& shifts, double tol,
                            double kernel_floor = 0.1);
/// Continuous kernel: density samples at (offset_min + j) h, unit trapezoid
/// mass; shifts must be grid points.
AcVerdict weak_star_verdict(const ContinuousSignal& psi, const spectral::Kernel& kernel,
                            const std::vector<double>& shifts, double tol,
                            double kernel_floor = 0.1);

/// sup |psi(x) - psi(y)| over grid pairs with |x - y| <= u and |x|, |y| >= t.
double oscillation_modulus(const DiscreteSignal& psi, double u, double t);
double oscillation_modulus(const ContinuousSignal& psi, double u, double t);

struct ChainConfig {
  double tol = 1e-2;
  spectral::Kernel kernel = spectral::Kernel::geometric(0.5);
  double kernel_floor = 0.1;
  std::vector<double> difference_shifts{1.0, 2.0, 3.0};
  double oscillation_width = 1.0;
  std::size_t points_per_octave = 32;
  std::size_t octaves = 4;
};

struct DifferenceDecay {
  double shift = 0.0;
  AcVerdict verdict;
  bool decays = false;  // positive with |limit| <= tol
};

struct ChainReport {
  AcVerdict c_verdict;
  AcVerdict wstar_verdict;
  AcVerdict ac_verdict;
  std::vector<DifferenceDecay> difference_decay;
  double oscillation_modulus = 0.0;
  bool consistency = true;
  std::vector<std::string> violations;
};

/// Ordinary limit, weak* limit and almost-convergence verdicts side by side.
/// Tails are the right end when the signal starts at or after 0, otherwise
/// both ends. A positive verdict must propagate down the chain with the
/// same limit; positive ac plus decaying differences must give positive w*c.
ChainReport chain_report(const DiscreteSignal& psi, const ChainConfig& config = {});
ChainReport chain_report(const ContinuousSignal& psi, const ChainConfig& config = {});

struct PrimitiveConfig {
  double theta_min = 2.0;
  double theta_max = 2048.0;
  double growth = 2.0;
  std::size_t shift_stride = 1;
};

struct PrimitiveReport {
  AcVerdict oac;
  double limit_error = 0.0;
  bool tail_decays = false;
  std::optional<double> primitive_error;  // |Psi(T) - L0| when psi -> 0
  bool pass = false;
};

/// Psi(x) = int_0^x psi by cumulative trapezoid, then a one-sided Cesaro
/// verdict on Psi. Throws HypothesisViolated when Psi is demonstrably not
/// one-sidedly almost convergent.
PrimitiveReport primitive_oac_check(const ContinuousSignal& psi, cplx l0, double tol,
                                    const PrimitiveConfig& config = {});

}  // namespace acsum::tauber
