#include "spectral.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>

namespace scpulse::detail {
namespace {

// FFTW planning is not thread-safe but executing a plan on new arrays is, so
// plans are created once per size under a lock and reused.
struct PlanPair {
  fftw_plan forward = nullptr;
  fftw_plan backward = nullptr;
};

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [n, p] : plans_) {
      fftw_destroy_plan(p.forward);
      fftw_destroy_plan(p.backward);
    }
  }

  const PlanPair& get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    const int len = static_cast<int>(n);
    std::vector<double> real(n);
    std::vector<fftw_complex> cplx(n / 2 + 1);
    PlanPair p;
    p.forward = fftw_plan_dft_r2c_1d(len, real.data(), cplx.data(),
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.backward = fftw_plan_dft_c2r_1d(len, cplx.data(), real.data(),
                                      FFTW_ESTIMATE | FFTW_UNALIGNED);
    return plans_.emplace(n, p).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache c;
  return c;
}

}  // namespace

std::vector<std::complex<double>> rfft(std::span<const double> f) {
  const std::size_t n = f.size();
  const auto& plan = cache().get(n);
  std::vector<double> in(f.begin(), f.end());
  std::vector<std::complex<double>> out(n / 2 + 1);
  fftw_execute_dft_r2c(plan.forward, in.data(),
                       reinterpret_cast<fftw_complex*>(out.data()));
  return out;
}

std::vector<double> irfft(std::span<const std::complex<double>> c, std::size_t n) {
  const auto& plan = cache().get(n);
  // c2r overwrites its input
  std::vector<std::complex<double>> in(c.begin(), c.end());
  std::vector<double> out(n);
  fftw_execute_dft_c2r(plan.backward, reinterpret_cast<fftw_complex*>(in.data()),
                       out.data());
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : out) v *= scale;
  return out;
}

}  // namespace scpulse::detail
