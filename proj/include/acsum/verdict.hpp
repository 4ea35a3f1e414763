#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "acsum/signal.hpp"

namespace acsum {

enum class AcStatus { AlmostConvergent, NotAlmostConvergent, Inconclusive };

std::string_view to_string(AcStatus status);

/// Pair of shifts whose window averages differ by `gap` at window length k.
struct Witness {
  double window = 0.0;
  double shift_high = 0.0;
  double shift_low = 0.0;
  double gap = 0.0;
};

struct AcVerdict {
  AcStatus status = AcStatus::Inconclusive;
  std::optional<cplx> limit;
  double uncertainty = 0.0;
  std::optional<Witness> witness;
  std::string notes;
};

inline std::string_view to_string(AcStatus status) {
  switch (status) {
    case AcStatus::AlmostConvergent: return "AlmostConvergent";
    case AcStatus::NotAlmostConvergent: return "NotAlmostConvergent";
    case AcStatus::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

}  // namespace acsum
