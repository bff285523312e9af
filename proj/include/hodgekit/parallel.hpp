#pragma once

#include <cstddef>
#include <exception>
#include <utility>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hk {

// Runtime switch between the OpenMP path and the serial reference path.
// Every parallel kernel writes results indexed by iteration, so both paths
// produce identical output; tests assert that and the bench target times it.
bool parallel_enabled();
void set_parallel(bool on);

namespace detail {
void rethrow_first(std::vector<std::exception_ptr>& errs);
}

template <typename F>
void parallel_for(std::size_t n, F&& body) {
  if (n == 0) return;
#ifdef _OPENMP
  if (parallel_enabled() && n > 1) {
    std::vector<std::exception_ptr> errs(n);
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        body(static_cast<std::size_t>(i));
      } catch (...) {
        errs[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    detail::rethrow_first(errs);
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) body(i);
}

}  // namespace hk
