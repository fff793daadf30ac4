#pragma once

#include <cstddef>
#include <functional>

namespace e2vem {

/// Worker count: E2VEM_THREADS when set to a positive integer, otherwise the
/// hardware concurrency (at least 1).
unsigned thread_count();

/// Calls body(i) for i in [0, n) on up to thread_count() threads. Work is split
/// into contiguous blocks. If any call throws, the exception raised by the
/// smallest index is rethrown after all workers finish, so failures are
/// reported deterministically.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace e2vem
