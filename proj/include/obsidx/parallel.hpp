#pragma once

#include <cstddef>
#include <functional>

namespace obsidx {

/// Runs body(i) for i in [0, count) on up to `threads` workers. If any call
/// throws, the exception of the lowest failing index is rethrown after all
/// workers finish.
void parallel_for(std::size_t count, unsigned threads, const std::function<void(std::size_t)>& body);

unsigned default_thread_count() noexcept;

}  // namespace obsidx
