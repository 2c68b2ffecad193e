#ifndef SWCLOCK_PARALLEL_HPP_
#define SWCLOCK_PARALLEL_HPP_

#include <cstddef>
#include <thread>
#include <vector>

namespace swclock {

// Static block partition of [0, count) over `workers` threads. Each worker
// writes only its own indices, so results do not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t count, int workers, Fn&& fn) {
  unsigned n = workers > 0 ? static_cast<unsigned>(workers)
                           : std::max(1u, std::thread::hardware_concurrency());
  if (n <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  n = std::min<std::size_t>(n, count);
  std::vector<std::thread> pool;
  pool.reserve(n);
  std::size_t chunk = (count + n - 1) / n;
  for (unsigned w = 0; w < n; ++w) {
    std::size_t begin = w * chunk;
    std::size_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([begin, end, &fn] {
      for (std::size_t i = begin; i < end; ++i) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace swclock

#endif  // SWCLOCK_PARALLEL_HPP_
