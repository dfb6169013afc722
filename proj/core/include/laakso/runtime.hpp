#pragma once

#include <cstddef>
#include <functional>

namespace laakso::runtime {

/// Worker cap: explicit set_thread_count() > LAAKSO_LAB_THREADS env > hardware.
int thread_count();
void set_thread_count(int n);

/// Runs fn(i) for i in [0, n). Work is split into contiguous index chunks;
/// fn must write only to slots owned by its index, so results do not depend
/// on the worker count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace laakso::runtime
