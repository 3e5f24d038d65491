#pragma once

// Project-wide Eigen include. All translation units go through this header so
// that the allocation guard is active everywhere: Eigen's internal heap
// allocations can be forbidden at runtime (see tests that pin the structured
// O(N^2 K) iteration path), and assertion failures surface as exceptions
// instead of vanishing in release builds.

#include <stdexcept>
#include <string>

namespace silnr::detail {
[[noreturn]] inline void eigen_assert_failed(const char* expr) {
  throw std::runtime_error(std::string("eigen assertion failed: ") + expr);
}
}  // namespace silnr::detail

#ifndef eigen_assert
#define eigen_assert(x)                                 \
  do {                                                  \
    if (!(x)) ::silnr::detail::eigen_assert_failed(#x); \
  } while (0)
#endif

#define EIGEN_RUNTIME_NO_MALLOC

#include <Eigen/Dense>

namespace silnr {

using cxd = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using RealVec = Eigen::VectorXd;
using RealMat = Eigen::MatrixXd;

/// RAII scope during which Eigen may not heap-allocate.
class NoAllocScope {
 public:
  NoAllocScope() { Eigen::internal::set_is_malloc_allowed(false); }
  ~NoAllocScope() { Eigen::internal::set_is_malloc_allowed(true); }
  NoAllocScope(const NoAllocScope&) = delete;
  NoAllocScope& operator=(const NoAllocScope&) = delete;
};

}  // namespace silnr
