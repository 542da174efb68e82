#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace convexity {

// Worker cap: explicit override > CONVEXITY_THREADS env var > hardware count.
// Results of all library operations are independent of this value by contract;
// it only bounds resource usage.
void set_thread_override(unsigned n); // 0 restores automatic selection
unsigned effective_threads();

// Splits [0, n) into contiguous chunks, at most effective_threads() of them,
// and runs `body(begin, end)` for each chunk. The partition depends only on n
// and the worker cap, never on scheduling.
void parallel_for_chunks(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

// Fixed-shape pairwise summation tree: the reduction order is a function of
// x.size() alone, so sums are reproducible across runs and thread counts.
double pairwise_sum(std::span<const double> x);

} // namespace convexity
