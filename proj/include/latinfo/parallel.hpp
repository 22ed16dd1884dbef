#pragma once

#include <cstddef>
#include <functional>

namespace latinfo {

/// Worker count: set_thread_count() if called, else LATINFO_THREADS, else hardware concurrency.
std::size_t thread_count();
void set_thread_count(std::size_t n);

/// Splits [0, n) into contiguous chunks; fn(begin, end) writes only its own indices.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace latinfo
