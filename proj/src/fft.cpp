#include "acsum/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace acsum::fft {

namespace {

// The FFTW planner is not reentrant; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

// Out-of-place plans, one per (length, sign), kept for the process
// lifetime. FFTW_UNALIGNED lets any buffers reuse them through the
// new-array interface, which is safe to call concurrently, and
// FFTW_PRESERVE_INPUT makes reading straight from the caller's span legal.
fftw_plan cached_plan(int n, int sign) {
  static std::map<std::pair<int, int>, fftw_plan> plans;
  std::lock_guard lock(planner_mutex());
  auto& plan = plans[{n, sign}];
  if (plan == nullptr) {
    std::vector<cplx> a(static_cast<std::size_t>(n));
    std::vector<cplx> b(static_cast<std::size_t>(n));
    plan = fftw_plan_dft_1d(n, reinterpret_cast<fftw_complex*>(a.data()),
                            reinterpret_cast<fftw_complex*>(b.data()), sign,
                            FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
  }
  return plan;
}

std::vector<cplx> transform(std::span<const cplx> in, int sign) {
  const int n = static_cast<int>(in.size());
  if (n <= 1) return {in.begin(), in.end()};
  std::vector<cplx> out(in.size());
  auto* src = reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in.data()));
  fftw_execute_dft(cached_plan(n, sign), src, reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

}  // namespace

std::vector<cplx> forward(std::span<const cplx> x) { return transform(x, FFTW_FORWARD); }

std::vector<cplx> inverse(std::span<const cplx> X) {
  auto out = transform(X, FFTW_BACKWARD);
  const double scale = out.empty() ? 1.0 : 1.0 / static_cast<double>(out.size());
  for (auto& v : out) v *= scale;
  return out;
}

double bin_frequency(std::size_t k, std::size_t n) {
  const auto kk = static_cast<double>(k);
  const auto nn = static_cast<double>(n);
  return 2 * k < n ? kk / nn : (kk - nn) / nn;
}

}  // namespace acsum::fft
