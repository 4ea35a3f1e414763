#include "acsum/cyclic.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "acsum/error.hpp"
#include "acsum/fft.hpp"

namespace acsum::cyclic {

namespace {

using Matrix = Eigen::MatrixXcd;

void check_order(const CyclicFunction& f, std::size_t n) {
  if (f.order() != n) {
    throw Error(ErrorCode::InvalidArgument,
                "vector of length " + std::to_string(f.order()) + " in Z_" + std::to_string(n));
  }
}

double sup_norm(std::span<const cplx> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Columns are the given vectors.
Matrix as_columns(const std::vector<CyclicFunction>& vectors, std::size_t n) {
  Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t j = 0; j < vectors.size(); ++j) {
    check_order(vectors[j], n);
    for (std::size_t i = 0; i < n; ++i) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = vectors[j].values[i];
    }
  }
  return m;
}

std::size_t matrix_rank(const Matrix& m, double tol) {
  if (m.cols() == 0 || m.rows() == 0) return 0;
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(tol);
  return static_cast<std::size_t>(qr.rank());
}

/// Orthonormal basis of the column span (thin Q restricted to the rank).
Matrix orthonormal_span(const Matrix& m, double tol) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::ColPivHouseholderQR<Matrix> qr(m);
  qr.setThreshold(tol);
  const Eigen::Index r = qr.rank();
  Matrix q = qr.householderQ() * Matrix::Identity(m.rows(), r);
  return q;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) {
    std::iota(parent.begin(), parent.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

}  // namespace

CyclicFunction CyclicFunction::zero(std::size_t n) { return {std::vector<cplx>(n)}; }

CyclicFunction CyclicFunction::constant(cplx c, std::size_t n) {
  return {std::vector<cplx>(n, c)};
}

CyclicFunction CyclicFunction::delta(std::size_t at, std::size_t n) {
  CyclicFunction f = zero(n);
  f.values.at(at) = 1.0;
  return f;
}

CyclicFunction CyclicFunction::character(std::size_t lambda, std::size_t n) {
  // N-th roots of unity, rebuilt only when N changes on this thread.
  thread_local std::vector<cplx> roots;
  if (roots.size() != n) {
    roots.resize(n);
    for (std::size_t r = 0; r < n; ++r) {
      roots[r] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(r) /
                                     static_cast<double>(n));
    }
  }
  CyclicFunction f = zero(n);
  if (n == 0) return f;
  // Exact integer reduction of the phase.
  const std::size_t step = lambda % n;
  std::size_t r = 0;
  for (std::size_t x = 0; x < n; ++x) {
    f.values[x] = roots[r];
    r += step;
    if (r >= n) r -= n;
  }
  return f;
}

CyclicFunction zn_fourier(const CyclicFunction& f) {
  if (f.order() == 0) throw Error(ErrorCode::InvalidArgument, "Z_N needs N >= 1");
  return {fft::forward(f.values)};
}

CyclicFunction zn_inverse(const CyclicFunction& fhat) {
  if (fhat.order() == 0) throw Error(ErrorCode::InvalidArgument, "Z_N needs N >= 1");
  return {fft::inverse(fhat.values)};
}

CyclicFunction convolve(const CyclicFunction& f, const CyclicFunction& g) {
  const std::size_t n = f.order();
  check_order(g, n);
  CyclicFunction out = CyclicFunction::zero(n);
  for (std::size_t x = 0; x < n; ++x) {
    cplx acc{};
    for (std::size_t t = 0; t < n; ++t) acc += f.values[t] * g.values[(x + n - t) % n];
    out.values[x] = acc;
  }
  return out;
}

CyclicFunction translate(const CyclicFunction& f, std::int64_t s) {
  const auto n = static_cast<std::int64_t>(f.order());
  CyclicFunction out = CyclicFunction::zero(f.order());
  for (std::int64_t x = 0; x < n; ++x) {
    const std::int64_t src = ((x - s) % n + n) % n;
    out.values[static_cast<std::size_t>(x)] = f.values[static_cast<std::size_t>(src)];
  }
  return out;
}

cplx pairing(const CyclicFunction& f, const CyclicFunction& psi) {
  const std::size_t n = f.order();
  check_order(psi, n);
  cplx acc{};
  for (std::size_t t = 0; t < n; ++t) acc += f.values[(n - t) % n] * psi.values[t];
  return acc;
}

Subset zero_set(const CyclicFunction& f, double tol) {
  if (tol < 0.0) throw Error(ErrorCode::InvalidArgument, "tol must be >= 0");
  const auto fhat = zn_fourier(f);
  const double scale = sup_norm(fhat.values);
  Subset out;
  for (std::size_t l = 0; l < fhat.order(); ++l) {
    if (std::abs(fhat.values[l]) <= tol * scale) out.push_back(l);
  }
  return out;
}

CyclicIdealBasis ideal_for(const Subset& c, std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Z_N needs N >= 1");
  std::vector<bool> in_c(n, false);
  for (std::size_t l : c) {
    if (l >= n) throw Error(ErrorCode::InvalidArgument, "frequency outside Z_N");
    in_c[l] = true;
  }
  CyclicIdealBasis ideal;
  ideal.order = n;
  for (std::size_t l = 0; l < n; ++l) {
    if (in_c[l]) {
      ideal.zero_set.push_back(l);
      continue;
    }
    auto chi = CyclicFunction::character(l, n);
    for (auto& v : chi.values) v /= static_cast<double>(n);
    ideal.basis.push_back(std::move(chi));
  }
  return ideal;
}

AnnihilatorResult annihilator(const std::vector<CyclicFunction>& basis, std::size_t n,
                              double tol) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Z_N needs N >= 1");

  // Rows of the Fourier matrix, with negligible entries cleared.
  std::vector<std::vector<cplx>> rows;
  rows.reserve(basis.size());
  for (const auto& f : basis) {
    check_order(f, n);
    auto row = fft::forward(f.values);
    const double scale = sup_norm(row);
    if (scale == 0.0) continue;
    const double cut = (tol * scale) * (tol * scale);
    for (auto& v : row) {
      if (std::norm(v) <= cut) v = 0.0;
    }
    rows.push_back(std::move(row));
  }

  // Frequencies coupled by some row must be solved together.
  DisjointSets sets(n);
  std::vector<bool> touched(n, false);
  for (const auto& row : rows) {
    std::size_t first = n;
    for (std::size_t l = 0; l < n; ++l) {
      if (row[l] == cplx{}) continue;
      touched[l] = true;
      if (first == n) {
        first = l;
      } else {
        sets.unite(first, l);
      }
    }
  }

  std::vector<std::vector<std::size_t>> members(n);
  std::vector<std::vector<std::size_t>> component_rows(n);
  for (std::size_t l = 0; l < n; ++l) {
    if (touched[l]) members[sets.find(l)].push_back(l);
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto it = std::find_if(rows[r].begin(), rows[r].end(),
                                 [](const cplx& v) { return v != cplx{}; });
    component_rows[sets.find(static_cast<std::size_t>(it - rows[r].begin()))].push_back(r);
  }

  AnnihilatorResult result;
  std::vector<std::vector<cplx>> fourier_basis;
  for (std::size_t l = 0; l < n; ++l) {
    if (!touched[l]) {
      std::vector<cplx> e(n);
      e[l] = 1.0;
      fourier_basis.push_back(std::move(e));
      continue;
    }
    if (sets.find(l) != l) continue;
    const auto& cols = members[l];
    const auto& rs = component_rows[l];
    const auto m = static_cast<Eigen::Index>(cols.size());
    // A^H: one column per row of the component.
    Matrix ah(m, static_cast<Eigen::Index>(rs.size()));
    for (std::size_t j = 0; j < rs.size(); ++j) {
      for (std::size_t i = 0; i < cols.size(); ++i) {
        ah(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            std::conj(rows[rs[j]][cols[i]]);
      }
    }
    Eigen::ColPivHouseholderQR<Matrix> qr(ah);
    qr.setThreshold(tol);
    const Eigen::Index rank = qr.rank();
    result.input_rank += static_cast<std::size_t>(rank);
    if (rank == m) continue;
    // Trailing columns of Q span range(A^H)^perp = null(A).
    const Matrix q = qr.householderQ() * Matrix::Identity(m, m);
    for (Eigen::Index c = rank; c < m; ++c) {
      std::vector<cplx> e(n);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        e[cols[i]] = q(static_cast<Eigen::Index>(i), c);
      }
      fourier_basis.push_back(std::move(e));
    }
  }

  result.rank_deficient = result.input_rank < basis.size();
  result.basis.reserve(fourier_basis.size());
  for (const auto& e : fourier_basis) result.basis.push_back({fft::inverse(e)});
  return result;
}

Subset spectrum_of(const CyclicFunction& psi, double tol) {
  if (tol < 0.0) throw Error(ErrorCode::InvalidArgument, "tol must be >= 0");
  const auto phat = zn_fourier(psi);
  const double scale = sup_norm(phat.values);
  Subset out;
  if (scale == 0.0) return out;
  for (std::size_t l = 0; l < phat.order(); ++l) {
    if (std::abs(phat.values[l]) > tol * scale) out.push_back(l);
  }
  return out;
}

namespace {

/// Common zero set of an ideal given by a basis. Basis vectors from
/// annihilator() have unit-norm transforms, so the threshold is absolute.
Subset common_zero_set(const std::vector<CyclicFunction>& ideal, std::size_t n, double tol) {
  std::vector<double> peak(n, 0.0);
  for (const auto& f : ideal) {
    const auto fhat = zn_fourier(f);
    for (std::size_t l = 0; l < n; ++l) peak[l] = std::max(peak[l], std::norm(fhat.values[l]));
  }
  Subset out;
  for (std::size_t l = 0; l < n; ++l) {
    if (peak[l] <= tol * tol) out.push_back(l);
  }
  return out;
}

}  // namespace

Subset spectrum_via_ideal(const CyclicFunction& psi, double tol) {
  const std::size_t n = psi.order();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Z_N needs N >= 1");
  std::vector<CyclicFunction> translates;
  translates.reserve(n);
  for (std::size_t s = 0; s < n; ++s) {
    translates.push_back(translate(psi, static_cast<std::int64_t>(s)));
  }
  const auto j = annihilator(translates, n, tol);
  return common_zero_set(j.basis, n, tol);
}

std::size_t rank_of(const std::vector<CyclicFunction>& vectors, std::size_t n, double tol) {
  return matrix_rank(as_columns(vectors, n), tol);
}

bool same_span(const std::vector<CyclicFunction>& a, const std::vector<CyclicFunction>& b,
               std::size_t n, double tol) {
  const Matrix ma = as_columns(a, n);
  const Matrix mb = as_columns(b, n);
  Matrix both(static_cast<Eigen::Index>(n), ma.cols() + mb.cols());
  both << ma, mb;
  const std::size_t ra = matrix_rank(ma, tol);
  return ra == matrix_rank(mb, tol) && ra == matrix_rank(both, tol);
}

CharacterSpectrumReport verify_character_spectrum(const std::vector<CyclicFunction>& basis,
                                                  std::size_t n, double tol) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Z_N needs N >= 1");
  const Matrix m = as_columns(basis, n);
  const Matrix q = orthonormal_span(m, tol);

  auto residual = [&](const Eigen::VectorXcd& v) -> double {
    if (q.cols() == 0) return v.norm();
    return (v - q * (q.adjoint() * v)).norm();
  };

  // Unit translates generate all translates.
  for (const auto& f : basis) {
    const auto shifted = translate(f, 1);
    Eigen::VectorXcd v(static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) v(static_cast<Eigen::Index>(i)) = shifted.values[i];
    const double scale = std::max(v.norm(), 1e-300);
    if (residual(v) > tol * scale * std::sqrt(static_cast<double>(n))) {
      throw Error(ErrorCode::NotInvariant, "span is not closed under translation");
    }
  }

  CharacterSpectrumReport report;
  const auto j = annihilator(basis, n, tol);
  report.via_ideal = common_zero_set(j.basis, n, std::sqrt(tol));

  // Membership of every character, a block of columns at a time.
  constexpr std::size_t kBlock = 64;
  const double cut = std::sqrt(tol) * std::sqrt(static_cast<double>(n));
  for (std::size_t first = 0; first < n; first += kBlock) {
    const std::size_t count = std::min(kBlock, n - first);
    Matrix chis(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(count));
    for (std::size_t c = 0; c < count; ++c) {
      const auto chi = CyclicFunction::character(first + c, n);
      for (std::size_t i = 0; i < n; ++i) {
        chis(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(c)) = chi.values[i];
      }
    }
    if (q.cols() > 0) chis -= q * (q.adjoint() * chis);
    // |chi| = sqrt(N); membership at relative tolerance.
    for (std::size_t c = 0; c < count; ++c) {
      if (chis.col(static_cast<Eigen::Index>(c)).norm() <= cut) {
        report.via_characters.push_back(first + c);
      }
    }
  }
  report.pass = report.via_ideal == report.via_characters;
  return report;
}

MeanReport invariant_mean_check(const CyclicFunction& weights, double tol) {
  const std::size_t n = weights.order();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Z_N needs N >= 1");
  cplx total{};
  for (const auto& w : weights.values) {
    if (std::abs(w.imag()) > tol || w.real() < -tol) {
      throw Error(ErrorCode::NotAMean, "weights must be real and nonnegative");
    }
    total += w;
  }
  if (std::abs(total - 1.0) > tol) {
    throw Error(ErrorCode::NotAMean, "weights must sum to 1");
  }

  MeanReport r;
  // phi(psi_s) = sum_t w(t + s) psi(t): invariant iff w is constant.
  double drift = 0.0;
  for (std::size_t t = 0; t < n; ++t) {
    drift = std::max(drift, std::abs(weights.values[t] - weights.values[(t + 1) % n]));
  }
  r.invariant = drift <= tol * sup_norm(weights.values);

  // phi pairs with psi as <w~, psi> where w~(t) = w(-t); its spectrum is
  // therefore supp of w~^, i.e. -supp w^.
  CyclicFunction reflected = CyclicFunction::zero(n);
  for (std::size_t t = 0; t < n; ++t) reflected.values[t] = weights.values[(n - t) % n];
  r.spectrum = spectrum_of(reflected, tol);
  r.spectrum_is_zero_only = r.spectrum == Subset{0};
  r.pass = r.invariant == r.spectrum_is_zero_only;
  return r;
}

MeanAnnihilatorReport mean_annihilator_check(const CyclicFunction& psi, double tol) {
  if (psi.order() == 0) throw Error(ErrorCode::InvalidArgument, "Z_N needs N >= 1");
  cplx total{};
  double l1 = 0.0;
  for (const auto& v : psi.values) {
    total += v;
    l1 += std::abs(v);
  }
  MeanAnnihilatorReport r;
  r.annihilated = std::abs(total) <= tol * l1;
  const auto sp = spectrum_of(psi, tol);
  r.zero_outside_spectrum = sp.empty() || sp.front() != 0;
  r.pass = r.annihilated == r.zero_outside_spectrum;
  return r;
}

}  // namespace acsum::cyclic
