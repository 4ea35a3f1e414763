#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <variant>
#include <vector>

#include "acsum/signal.hpp"

namespace acsum {

// Closed-form test functions whose almost-convergence behaviour is known
// exactly. Frequencies are in cycles per unit: Character{f} is e^{2 pi i f x}.

struct Character {
  double freq = 0.0;
};

struct TrigTerm {
  cplx coeff;
  double freq = 0.0;
};

struct TrigPoly {
  std::vector<TrigTerm> terms;
};

/// psi(t) = sum_{n=1}^{M} a_n n^{-sigma} e^{-i t log n}. The convergence
/// abscissa is declared by the user, never inferred.
struct DirichletLine {
  std::vector<cplx> coeffs;
  double sigma = 2.0;
  double abscissa = 1.0;
};

struct Atom {
  double freq = 0.0;
  cplx weight;
};

/// Density of an absolutely continuous measure, sampled uniformly on [lo, hi].
struct SampledDensity {
  double lo = 0.0;
  double hi = 0.0;
  std::vector<cplx> values;
};

/// Fourier-Stieltjes transform of sum_j w_j delta_{lambda_j} + nu.
struct MeasureTransform {
  std::vector<Atom> atoms;
  std::optional<SampledDensity> density;
};

/// Blocks of lengths base^0, base^1, ... on n >= 0 carrying
/// symbols[0], symbols[1], ... cyclically; mirrored for n < 0.
struct BlockSequence {
  std::vector<double> symbols{0.0, 1.0};
  std::uint32_t base = 2;
};

enum class DecayProfile { Exponential, Algebraic };

/// limit + amplitude * e^{-rate |x|}  or  limit + amplitude * (1+|x|)^{-rate}.
struct Convergent {
  cplx limit;
  cplx amplitude{1.0, 0.0};
  double rate = 1.0;
  DecayProfile profile = DecayProfile::Exponential;
};

/// Explicit samples on the grid origin + j*step. No closed form off-grid.
struct Custom {
  double origin = 0.0;
  double step = 1.0;
  std::vector<cplx> values;
};

struct PartialSums;

using GeneratorSpec = std::variant<Character, TrigPoly, DirichletLine,
                                   MeasureTransform, BlockSequence,
                                   PartialSums, Convergent, Custom>;

/// s_n = sum_{k=0}^{n} a_k with a_k = inner(k) for k >= 0; s_n = 0 for n < 0.
struct PartialSums {
  std::shared_ptr<const GeneratorSpec> inner;
};

GeneratorSpec partial_sums_of(GeneratorSpec inner);

/// Closed-form value at a point. Throws UnsupportedPoint for Custom and
/// DivergentSeries for a Dirichlet line at or left of its abscissa.
cplx evaluate(const GeneratorSpec& spec, double point);

/// sup-norm bound known from the closed form (triangle inequality);
/// nullopt for PartialSums and Custom.
std::optional<double> declared_bound(const GeneratorSpec& spec);

/// Closed interval [lo, hi] of the frequency axis; atoms have lo == hi.
struct FrequencyInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// The frequency support the closed form promises, or nullopt when the
/// generator has no declared frequency set (decays, blocks, custom data).
std::optional<std::vector<FrequencyInterval>> declared_frequencies(
    const GeneratorSpec& spec);

/// Largest |frequency| in the declared set.
std::optional<double> max_frequency(const GeneratorSpec& spec);

/// Aliasing guard for continuous renderings: h * lambda_max <= 0.1.
/// Generators without a declared frequency set pass vacuously.
bool aliasing_ok(const GeneratorSpec& spec, double step);

DiscreteSignal render_discrete(const GeneratorSpec& spec, std::int64_t n_min,
                               std::int64_t n_max,
                               Extension extension = Extension::ValidOnly);

ContinuousSignal render_continuous(const GeneratorSpec& spec, double x0,
                                   double step, std::size_t count,
                                   Extension extension = Extension::ValidOnly);

}  // namespace acsum
