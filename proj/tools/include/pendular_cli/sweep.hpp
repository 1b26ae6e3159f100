#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace pendular::cli {

/// Evaluates fn(i) for i in [0, n) on a small thread pool and returns the
/// results in index order. The first exception thrown by any worker is
/// rethrown on the calling thread.
template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn);

/// Type-erased driver used by parallel_map.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

template <class T>
std::vector<T> parallel_map(std::size_t n, const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace pendular::cli
