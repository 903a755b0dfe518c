#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace gmra {

// Worker count: GMRA_THREADS if set and positive, else the hardware count.
int thread_count();

// Runs body(i) for i in [0, n) across worker threads. If any call throws,
// the exception from the smallest index is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

template <class T, class F>
std::vector<T> parallel_map(std::size_t n, F&& f) {
  std::vector<T> out(n);
  parallel_for(n, [&](std::size_t i) { out[i] = f(i); });
  return out;
}

}  // namespace gmra
