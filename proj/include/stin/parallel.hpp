#pragma once

#include <cstddef>

#include "stin/function_ref.hpp"

namespace stin {

/// Worker count: a positive request wins, then STIN_THREADS, then all cores.
int resolve_threads(int requested = 0);

/// Runs body(i) for i in [0, n) on up to `threads` workers. If any call
/// throws, the exception from the lowest failing index is rethrown.
void parallel_for(std::size_t n, int threads, FunctionRef<void(std::size_t)> body);

}  // namespace stin
