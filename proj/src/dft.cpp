#include "dft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <tuple>

namespace qha::detail {
namespace {

class PlanCache {
 public:
  ~PlanCache() {
    for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
  }

  fftw_plan get(int rows, int cols, Direction dir) {
    const auto key = std::make_tuple(rows, cols, dir == Direction::forward);
    std::lock_guard lock(mutex_);
    if (auto it = plans_.find(key); it != plans_.end()) return it->second;
    const int sign = dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    const int n = rows * cols;
    auto* buffer = fftw_alloc_complex(static_cast<size_t>(n));
    fftw_plan plan = rows == 1
        ? fftw_plan_dft_1d(cols, buffer, buffer, sign, FFTW_ESTIMATE | FFTW_UNALIGNED)
        : fftw_plan_dft_2d(rows, cols, buffer, buffer, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(buffer);
    if (plan == nullptr) throw NumericalError("FFTW plan creation failed");
    plans_.emplace(key, plan);
    return plan;
  }

 private:
  std::mutex mutex_;
  std::map<std::tuple<int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

}  // namespace

void dft(Complex* data, int n, Direction dir) {
  auto* buf = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(cache().get(1, n, dir), buf, buf);
}

void dft2(CMatrix& data, Direction dir) {
  // Column-major rows x cols storage is row-major cols x rows; the 2-D DFT is
  // separable, so transforming that layout transforms the matrix.
  const int rows = static_cast<int>(data.cols());
  const int cols = static_cast<int>(data.rows());
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(cache().get(rows, cols, dir), buf, buf);
}

}  // namespace qha::detail
