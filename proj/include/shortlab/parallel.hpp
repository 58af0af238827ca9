#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace shortlab {

// Upper bound on worker threads used by every parallel loop in the library.
// 0 means "hardware concurrency". Results never depend on this value:
// work is cut into chunks whose boundaries depend only on the problem size,
// and partial results are combined in chunk order.
void set_thread_limit(unsigned n);
unsigned thread_limit();

// Calls body(chunk_index, begin, end) for every chunk of [0, n) of size grain
// (the last one may be shorter). Chunks run concurrently and in any order.
void parallel_chunks(std::size_t n, std::size_t grain,
                     const std::function<void(std::size_t, std::size_t, std::size_t)>& body);

inline std::size_t chunk_count(std::size_t n, std::size_t grain) {
  return grain == 0 ? 0 : (n + grain - 1) / grain;
}

// Map each chunk to a partial result, then fold the partials left to right.
template <class T, class Map, class Fold>
T deterministic_reduce(std::size_t n, std::size_t grain, T init, Map map, Fold fold) {
  std::vector<T> partial(chunk_count(n, grain), init);
  parallel_chunks(n, grain, [&](std::size_t c, std::size_t b, std::size_t e) {
    partial[c] = map(b, e);
  });
  T acc = init;
  for (auto& p : partial) acc = fold(std::move(acc), p);
  return acc;
}

}  // namespace shortlab
