#pragma once

#include <cstddef>
#include <exception>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace ellva {

enum class ExecMode { serial, parallel };

#ifdef _OPENMP
inline int sweep_hardware_threads() { return omp_get_max_threads(); }
#else
inline int sweep_hardware_threads() { return 1; }
#endif

// Evaluate fn(0..count-1) into an index-ordered vector. The parallel path is
// an OpenMP loop writing disjoint slots, so results are byte-identical to the
// serial reference for any thread count; tests and the benchmark compare the
// two directly. Exceptions are captured per slot and the first one rethrown
// after the loop joins.
template <typename Fn>
auto sweep_map(std::size_t count, ExecMode mode, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{0}))> {
  using R = decltype(fn(std::size_t{0}));
  std::vector<R> out(count);
  std::vector<std::exception_ptr> errors(count);

#ifdef _OPENMP
  if (mode == ExecMode::parallel) {
#pragma omp parallel for schedule(dynamic)
    for (long long i = 0; i < static_cast<long long>(count); ++i) {
      try {
        out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
      } catch (...) {
        errors[static_cast<std::size_t>(i)] = std::current_exception();
      }
    }
    for (const auto& e : errors)
      if (e) std::rethrow_exception(e);
    return out;
  }
#else
  (void)mode;
#endif

  for (std::size_t i = 0; i < count; ++i) out[i] = fn(i);
  return out;
}

}  // namespace ellva
