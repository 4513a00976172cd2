/**
 * @file threading.hpp
 * @brief Fork-join helper for embarrassingly parallel exact computations.
 *
 * All users of parallel_for compute independent exact results that are
 * collected positionally, so the output of the library is identical for any
 * thread count (a tested invariant).  The global thread count defaults to
 * the hardware concurrency and can be overridden by the CLI --threads flag.
 */
#pragma once

#include <cstddef>
#include <functional>

namespace g2torsion {

/// Number of worker threads currently configured (>= 1).
int thread_count();

/// Override the worker thread count; values < 1 are clamped to 1.
void set_thread_count(int n);

/// Hardware concurrency as reported by the OS (>= 1).
int hardware_threads();

/// Run body(i) for i in [0, n).  Work is split into contiguous chunks over
/// the configured threads; with one thread (or tiny n) it runs inline.
/// The body must not throw across threads without handling; exceptions are
/// captured and rethrown on the caller after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace g2torsion
