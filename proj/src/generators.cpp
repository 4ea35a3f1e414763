#include "acsum/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "acsum/error.hpp"

namespace acsum {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

cplx character(double freq, double x) {
  // Reduce the phase before multiplying by 2 pi to keep large |x| accurate.
  const double turns = freq * x;
  const double frac = turns - std::round(turns);
  // Quarter turns are exact so that real characters stay real.
  const double quarters = 4.0 * frac;
  if (quarters == std::round(quarters)) {
    switch (static_cast<int>(quarters)) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case -1: return {0.0, -1.0};
      default: return {-1.0, 0.0};
    }
  }
  return std::polar(1.0, kTwoPi * frac);
}

void require_convergent(const DirichletLine& d) {
  if (!(d.sigma > d.abscissa)) {
    throw Error(ErrorCode::DivergentSeries,
                "Dirichlet line sigma=" + std::to_string(d.sigma) +
                    " is not right of the declared abscissa " +
                    std::to_string(d.abscissa));
  }
}

double trapezoid_density_mass(const SampledDensity& d) {
  if (d.values.size() < 2) return 0.0;
  const double dl = (d.hi - d.lo) / static_cast<double>(d.values.size() - 1);
  double mass = 0.0;
  for (std::size_t j = 0; j < d.values.size(); ++j) {
    const double w = (j == 0 || j + 1 == d.values.size()) ? 0.5 : 1.0;
    mass += w * std::abs(d.values[j]);
  }
  return mass * dl;
}

cplx block_value(const BlockSequence& b, double point) {
  if (b.symbols.empty() || b.base < 2) {
    throw Error(ErrorCode::InvalidArgument, "block sequence needs symbols and base >= 2");
  }
  double n = std::floor(std::abs(point));
  std::size_t m = 0;
  double length = 1.0;
  while (n >= length) {
    n -= length;
    length *= static_cast<double>(b.base);
    ++m;
  }
  return {b.symbols[m % b.symbols.size()], 0.0};
}

}  // namespace

GeneratorSpec partial_sums_of(GeneratorSpec inner) {
  return PartialSums{std::make_shared<const GeneratorSpec>(std::move(inner))};
}

cplx evaluate(const GeneratorSpec& spec, double point) {
  return std::visit(
      overloaded{
          [&](const Character& c) { return character(c.freq, point); },
          [&](const TrigPoly& p) {
            cplx sum{};
            for (const auto& t : p.terms) sum += t.coeff * character(t.freq, point);
            return sum;
          },
          [&](const DirichletLine& d) {
            require_convergent(d);
            cplx sum{};
            for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
              const double n = static_cast<double>(i + 1);
              const double logn = std::log(n);
              sum += d.coeffs[i] * std::pow(n, -d.sigma) *
                     std::polar(1.0, -point * logn);
            }
            return sum;
          },
          [&](const MeasureTransform& m) {
            cplx sum{};
            for (const auto& a : m.atoms) sum += a.weight * character(a.freq, point);
            if (m.density && m.density->values.size() >= 2) {
              const auto& d = *m.density;
              const double dl = (d.hi - d.lo) / static_cast<double>(d.values.size() - 1);
              cplx integral{};
              for (std::size_t j = 0; j < d.values.size(); ++j) {
                const double w = (j == 0 || j + 1 == d.values.size()) ? 0.5 : 1.0;
                const double lambda = d.lo + dl * static_cast<double>(j);
                integral += w * d.values[j] * character(lambda, point);
              }
              sum += integral * dl;
            }
            return sum;
          },
          [&](const BlockSequence& b) { return block_value(b, point); },
          [&](const PartialSums& p) {
            if (!p.inner) throw Error(ErrorCode::InvalidArgument, "partial sums without inner");
            const double last = std::floor(point);
            cplx sum{};
            for (double k = 0.0; k <= last; k += 1.0) sum += evaluate(*p.inner, k);
            return sum;
          },
          [&](const Convergent& c) {
            const double r = std::abs(point);
            const double decay = c.profile == DecayProfile::Exponential
                                     ? std::exp(-c.rate * r)
                                     : std::pow(1.0 + r, -c.rate);
            return c.limit + c.amplitude * decay;
          },
          [&](const Custom&) -> cplx {
            throw Error(ErrorCode::UnsupportedPoint,
                        "custom samples have no closed form off the grid");
          },
      },
      spec);
}

std::optional<double> declared_bound(const GeneratorSpec& spec) {
  return std::visit(
      overloaded{
          [](const Character&) -> std::optional<double> { return 1.0; },
          [](const TrigPoly& p) -> std::optional<double> {
            double b = 0.0;
            for (const auto& t : p.terms) b += std::abs(t.coeff);
            return b;
          },
          [](const DirichletLine& d) -> std::optional<double> {
            require_convergent(d);
            double b = 0.0;
            for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
              b += std::abs(d.coeffs[i]) * std::pow(static_cast<double>(i + 1), -d.sigma);
            }
            return b;
          },
          [](const MeasureTransform& m) -> std::optional<double> {
            double b = 0.0;
            for (const auto& a : m.atoms) b += std::abs(a.weight);
            if (m.density) b += trapezoid_density_mass(*m.density);
            return b;
          },
          [](const BlockSequence& b) -> std::optional<double> {
            double m = 0.0;
            for (double s : b.symbols) m = std::max(m, std::abs(s));
            return m;
          },
          [](const PartialSums&) -> std::optional<double> { return std::nullopt; },
          [](const Convergent& c) -> std::optional<double> {
            return std::abs(c.limit) + std::abs(c.amplitude);
          },
          [](const Custom&) -> std::optional<double> { return std::nullopt; },
      },
      spec);
}

std::optional<std::vector<FrequencyInterval>> declared_frequencies(
    const GeneratorSpec& spec) {
  using Result = std::optional<std::vector<FrequencyInterval>>;
  return std::visit(
      overloaded{
          [](const Character& c) -> Result {
            return std::vector<FrequencyInterval>{{c.freq, c.freq}};
          },
          [](const TrigPoly& p) -> Result {
            std::vector<FrequencyInterval> out;
            for (const auto& t : p.terms) {
              if (t.coeff != cplx{}) out.push_back({t.freq, t.freq});
            }
            return out;
          },
          [](const DirichletLine& d) -> Result {
            std::vector<FrequencyInterval> out;
            for (std::size_t i = 0; i < d.coeffs.size(); ++i) {
              if (d.coeffs[i] == cplx{}) continue;
              const double f = -std::log(static_cast<double>(i + 1)) / kTwoPi;
              out.push_back({f, f});
            }
            return out;
          },
          [](const MeasureTransform& m) -> Result {
            std::vector<FrequencyInterval> out;
            for (const auto& a : m.atoms) {
              if (a.weight != cplx{}) out.push_back({a.freq, a.freq});
            }
            if (m.density) {
              const bool nonzero = std::any_of(m.density->values.begin(), m.density->values.end(),
                                               [](const cplx& v) { return v != cplx{}; });
              if (nonzero) out.push_back({m.density->lo, m.density->hi});
            }
            return out;
          },
          [](const BlockSequence&) -> Result { return std::nullopt; },
          [](const PartialSums&) -> Result { return std::nullopt; },
          [](const Convergent&) -> Result { return std::nullopt; },
          [](const Custom&) -> Result { return std::nullopt; },
      },
      spec);
}

std::optional<double> max_frequency(const GeneratorSpec& spec) {
  const auto freqs = declared_frequencies(spec);
  if (!freqs) return std::nullopt;
  double m = 0.0;
  for (const auto& f : *freqs) m = std::max({m, std::abs(f.lo), std::abs(f.hi)});
  return m;
}

bool aliasing_ok(const GeneratorSpec& spec, double step) {
  const auto m = max_frequency(spec);
  return !m || step * *m <= 0.1;
}

namespace {

/// Custom samples looked up on their own grid; the requested points must
/// coincide with it.
cplx custom_at(const Custom& c, double point) {
  if (!(c.step > 0.0)) throw Error(ErrorCode::InvalidArgument, "custom step must be > 0");
  const double idx = (point - c.origin) / c.step;
  const double rounded = std::round(idx);
  if (std::abs(idx - rounded) > 1e-9 || rounded < 0.0 ||
      rounded >= static_cast<double>(c.values.size())) {
    throw Error(ErrorCode::UnsupportedPoint,
                "point " + std::to_string(point) + " is not a custom sample");
  }
  return c.values[static_cast<std::size_t>(rounded)];
}

std::optional<double> max_abs(std::span<const cplx> v) {
  double m = 0.0;
  for (const auto& x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

DiscreteSignal render_discrete(const GeneratorSpec& spec, std::int64_t n_min,
                               std::int64_t n_max, Extension extension) {
  if (n_min > n_max) throw Error(ErrorCode::InvalidArgument, "render needs n_min <= n_max");
  const auto count = static_cast<std::size_t>(n_max - n_min + 1);
  std::vector<cplx> values(count);

  if (const auto* p = std::get_if<PartialSums>(&spec)) {
    if (!p->inner) throw Error(ErrorCode::InvalidArgument, "partial sums without inner");
    // Cumulative rendering: s_n = s_{n-1} + a_n exactly.
    cplx running{};
    if (n_min > 0) running = evaluate(spec, static_cast<double>(n_min - 1));
    for (std::size_t j = 0; j < count; ++j) {
      const std::int64_t n = n_min + static_cast<std::int64_t>(j);
      if (n >= 0) running += evaluate(*p->inner, static_cast<double>(n));
      values[j] = running;
    }
    return DiscreteSignal(n_min, std::move(values), std::nullopt, extension);
  }
  if (const auto* c = std::get_if<Custom>(&spec)) {
    for (std::size_t j = 0; j < count; ++j) {
      values[j] = custom_at(*c, static_cast<double>(n_min + static_cast<std::int64_t>(j)));
    }
    return DiscreteSignal(n_min, std::move(values), std::nullopt, extension);
  }

  for (std::size_t j = 0; j < count; ++j) {
    values[j] = evaluate(spec, static_cast<double>(n_min + static_cast<std::int64_t>(j)));
  }
  auto bound = declared_bound(spec);
  if (bound) bound = std::max(*bound, *max_abs(values));
  return DiscreteSignal(n_min, std::move(values), bound, extension);
}

ContinuousSignal render_continuous(const GeneratorSpec& spec, double x0, double step,
                                   std::size_t count, Extension extension) {
  if (!(step > 0.0)) throw Error(ErrorCode::InvalidArgument, "render needs h > 0");
  if (count < 1) throw Error(ErrorCode::InvalidArgument, "render needs count >= 1");
  std::vector<cplx> samples(count);
  const auto* custom = std::get_if<Custom>(&spec);
  for (std::size_t j = 0; j < count; ++j) {
    const double x = x0 + step * static_cast<double>(j);
    samples[j] = custom ? custom_at(*custom, x) : evaluate(spec, x);
  }
  auto bound = declared_bound(spec);
  // Rounding can push |value| a few ulps past the analytic bound.
  if (bound) bound = std::max(*bound, *max_abs(samples));
  return ContinuousSignal(x0, step, std::move(samples), bound, extension);
}

}  // namespace acsum
