#pragma once

#include <cstddef>
#include <functional>

namespace tastecomp {

// Worker count for data-parallel loops; 0 selects hardware concurrency.
void set_thread_count(std::size_t n) noexcept;
std::size_t thread_count() noexcept;

// Runs body(i) for i in [0, n). Iterations must write to disjoint outputs;
// results are therefore independent of the worker count. The first
// exception thrown by any iteration is rethrown on the calling thread.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace tastecomp
