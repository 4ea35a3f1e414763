#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "acsum/signal.hpp"

/// Exact harmonic analysis on the finite cyclic group Z_N.
///
/// Conventions: f^(lambda) = sum_x f(x) e^{-2 pi i lambda x / N}; the pairing
/// between functions is the bilinear <f, psi> = sum_t f(-t) psi(t) = (f*psi)(0),
/// never the Hermitian inner product.
namespace acsum::cyclic {

/// Sorted subset of Z_N.
using Subset = std::vector<std::size_t>;

struct CyclicFunction {
  std::vector<cplx> values;

  std::size_t order() const { return values.size(); }

  static CyclicFunction zero(std::size_t n);
  static CyclicFunction constant(cplx c, std::size_t n);
  static CyclicFunction delta(std::size_t at, std::size_t n);
  /// chi_lambda(x) = e^{2 pi i lambda x / N}.
  static CyclicFunction character(std::size_t lambda, std::size_t n);
};

CyclicFunction zn_fourier(const CyclicFunction& f);
CyclicFunction zn_inverse(const CyclicFunction& fhat);

/// (f*g)(x) = sum_t f(t) g(x - t), computed directly.
CyclicFunction convolve(const CyclicFunction& f, const CyclicFunction& g);
/// x -> f(x - s).
CyclicFunction translate(const CyclicFunction& f, std::int64_t s);
cplx pairing(const CyclicFunction& f, const CyclicFunction& psi);

/// {lambda : |f^(lambda)| <= tol * max |f^|}; everything when f = 0.
Subset zero_set(const CyclicFunction& f, double tol = 1e-9);

struct CyclicIdealBasis {
  std::size_t order = 0;
  std::vector<CyclicFunction> basis;
  Subset zero_set;

  std::size_t dimension() const { return basis.size(); }
};

/// I(C): basis chi_lambda / N (inverse transforms of unit vectors) for
/// lambda outside C.
CyclicIdealBasis ideal_for(const Subset& c, std::size_t n);

struct AnnihilatorResult {
  std::vector<CyclicFunction> basis;
  std::size_t input_rank = 0;
  /// The input vectors were linearly dependent; they were deduplicated.
  bool rank_deficient = false;
};

/// Basis of {g : <g, e> = 0 for all e in span(basis)}. Works in Fourier
/// coordinates, where the pairing is (1/N) sum g^ e^ and frequencies that
/// no input couples split into independent blocks. `tol` is the relative
/// threshold below which Fourier entries and QR pivots count as zero.
AnnihilatorResult annihilator(const std::vector<CyclicFunction>& basis, std::size_t n,
                              double tol = 1e-10);

/// supp psi^ at relative threshold tol.
Subset spectrum_of(const CyclicFunction& psi, double tol = 1e-9);

/// Z(J(psi)) computed from the definition: J(psi) is the annihilator of the
/// translates of psi, then its common zero set.
Subset spectrum_via_ideal(const CyclicFunction& psi, double tol = 1e-9);

/// rank(A) == rank(B) == rank([A B]) at relative threshold tol.
bool same_span(const std::vector<CyclicFunction>& a, const std::vector<CyclicFunction>& b,
               std::size_t n, double tol = 1e-9);

/// Numerical rank of the vectors (space domain).
std::size_t rank_of(const std::vector<CyclicFunction>& vectors, std::size_t n,
                    double tol = 1e-9);

struct CharacterSpectrumReport {
  Subset via_ideal;       // Z(J(Phi)) with J(Phi) the annihilator of Phi
  Subset via_characters;  // {lambda : chi_lambda in span Phi}
  bool pass = false;
};

/// sp(Phi) computed two ways for a translation-invariant subspace. Throws
/// NotInvariant when a unit translate of a basis vector leaves the span.
CharacterSpectrumReport verify_character_spectrum(const std::vector<CyclicFunction>& basis,
                                                  std::size_t n, double tol = 1e-9);

struct MeanReport {
  bool invariant = false;  // phi(psi_s) == phi(psi) for all s, psi
  Subset spectrum;         // sp(phi) as a functional
  bool spectrum_is_zero_only = false;
  bool pass = false;       // invariant <=> spectrum == {0}
};

/// phi(psi) = sum_t w(t) psi(t) for the weight vector w. Throws NotAMean
/// unless w >= 0 (real) and sum w == 1 to tol.
MeanReport invariant_mean_check(const CyclicFunction& weights, double tol = 1e-9);

struct MeanAnnihilatorReport {
  bool annihilated = false;          // |sum psi| <= tol * ||psi||_1
  bool zero_outside_spectrum = false;  // 0 not in spectrum_of(psi)
  bool pass = false;
};

MeanAnnihilatorReport mean_annihilator_check(const CyclicFunction& psi, double tol = 1e-9);

/// Randomised exercise of the Z_N identities.
struct SuiteReport {
  std::size_t order = 0;
  std::size_t cases = 0;
  std::uint64_t seed = 0;
  double max_roundtrip_error = 0.0;    // relative, sup norm
  double max_convolution_error = 0.0;  // relative, sup norm
  std::size_t roundtrip_pass = 0;
  std::size_t convolution_pass = 0;
  std::size_t character_spectrum_pass = 0;
  std::size_t invariant_mean_pass = 0;
  std::size_t mean_annihilator_pass = 0;
  std::size_t duality_pass = 0;
  std::size_t ideal_correspondence_pass = 0;
  std::vector<std::string> failures;

  bool all_pass() const { return failures.empty(); }
};

SuiteReport run_suite(std::size_t n, std::size_t cases, std::uint64_t seed,
                      double tol = 1e-9);

}  // namespace acsum::cyclic
