#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace wiretap {

// Selects the OpenMP kernel or its serial reference. Both produce identical
// results: every parallel loop writes to its own output slot and results
// are reduced in index order afterwards.
enum class Execution { kSerial, kParallel };

// Runs body(i) for i in [0, n). Thread count follows OMP_NUM_THREADS. An
// exception thrown by any body is rethrown after the loop (lowest index
// first) so both execution modes fail the same way.
template <typename Body>
void for_each_index(std::size_t n, Execution exec, Body&& body) {
  std::vector<std::exception_ptr> errors(n);
  const auto count = static_cast<long long>(n);
  auto guarded = [&](long long i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  };
  if (exec == Execution::kParallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < count; ++i) guarded(i);
  } else {
    for (long long i = 0; i < count; ++i) guarded(i);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
}

inline int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace wiretap
