#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "acsum/cesaro.hpp"
#include "acsum/cyclic.hpp"
#include "acsum/generators.hpp"
#include "acsum/signal.hpp"
#include "acsum/spectral.hpp"
#include "acsum/tauberian.hpp"
#include "acsum/verdict.hpp"

/// Serialization. Malformed input raises Error(ConfigError).
namespace acsum::io {

using json = nlohmann::json;

/// Complex numbers are written as [re, im]; a bare number reads as real.
json to_json(cplx z);
cplx complex_from_json(const json& j);

/// GeneratorSpec with a "kind" discriminator: character, trig_poly,
/// dirichlet_line, measure_transform, block_sequence, partial_sums,
/// convergent, custom.
json to_json(const GeneratorSpec& spec);
GeneratorSpec generator_from_json(const json& j);

json to_json(const AcVerdict& v);
json to_json(const cesaro::CesaroSweep& sweep);
json to_json(const spectral::SpectrumEstimate& est);
json to_json(const spectral::SupportReport& r);
json to_json(const tauber::MeanSweep& sweep);
json to_json(const tauber::ResidueEstimate& r);
json to_json(const tauber::FatouReport& r);
json to_json(const tauber::ChainReport& r);
json to_json(const tauber::PrimitiveReport& r);
json to_json(const cyclic::SuiteReport& r);

/// {"schema": "v1", "kind": kind, ...body}.
json report(const std::string& kind, json body);
/// Pretty-printed with a trailing newline.
std::string dump(const json& j);

/// Shortest text that reads back to the same double.
std::string format_number(double x);

/// "index,re,im" (discrete) or "x,re,im" (continuous) with a header row.
std::string signal_csv(const DiscreteSignal& s);
std::string signal_csv(const ContinuousSignal& s);

struct SampleTable {
  bool integer_index = true;
  std::vector<double> positions;
  std::vector<cplx> values;
};

SampleTable parse_signal_csv(const std::string& text);
/// Rows must be consecutive integers.
DiscreteSignal discrete_from_csv(const std::string& text,
                                 Extension extension = Extension::ValidOnly);
/// Rows must be equally spaced.
ContinuousSignal continuous_from_csv(const std::string& text,
                                     Extension extension = Extension::ValidOnly);

/// k,sup_re,sup_im,inf_re,inf_im,argmax,argmin (arg columns refer to the
/// real part).
std::string sweep_csv(const cesaro::CesaroSweep& sweep);
/// freq,magnitude,masked
std::string spectrum_csv(const spectral::SpectrumEstimate& est);
/// abscissa,re,im
std::string mean_sweep_csv(const tauber::MeanSweep& sweep);
/// index,re,im
std::string cyclic_csv(const cyclic::CyclicFunction& f);
cyclic::CyclicFunction cyclic_from_csv(const std::string& text);

std::string read_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames over the target.
void write_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace acsum::io
