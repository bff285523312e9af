#include "hodgekit/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>

namespace hk {

namespace {
std::atomic<int> g_parallel{-1};  // -1 unset, 0 off, 1 on

int initial_setting() {
#ifdef _OPENMP
  if (const char* e = std::getenv("HODGEKIT_PAR")) {
    if (std::strcmp(e, "0") == 0) return 0;
  }
  return 1;
#else
  return 0;
#endif
}
}  // namespace

bool parallel_enabled() {
  int v = g_parallel.load(std::memory_order_relaxed);
  if (v < 0) {
    v = initial_setting();
    g_parallel.store(v, std::memory_order_relaxed);
  }
  return v == 1;
}

void set_parallel(bool on) {
#ifdef _OPENMP
  g_parallel.store(on ? 1 : 0, std::memory_order_relaxed);
#else
  (void)on;
  g_parallel.store(0, std::memory_order_relaxed);
#endif
}

namespace detail {
void rethrow_first(std::vector<std::exception_ptr>& errs) {
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
}
}  // namespace detail

}  // namespace hk
