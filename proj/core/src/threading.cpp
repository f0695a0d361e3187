#include "thermagrid/threading.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace thermagrid {

unsigned thread_count() {
  unsigned n = 0;
  if (const char* env = std::getenv("THERMAGRID_THREADS")) {
    try {
      const long parsed = std::stol(env);
      n = parsed > 0 ? static_cast<unsigned>(parsed) : 0;
    } catch (const std::exception&) {
      n = 0;  // unparsable: fall through to auto
    }
  }
  if (n == 0) {
    n = std::thread::hardware_concurrency();
  }
  return std::max(1u, n);
}

void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  if (n == 0) {
    return;
  }
  const std::size_t workers = std::min<std::size_t>(thread_count(), n);
  if (workers <= 1) {
    fn(0, n);
    return;
  }
  const std::size_t chunk = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t begin = w * chunk;
    const std::size_t end = std::min(n, begin + chunk);
    if (begin >= end) {
      break;
    }
    pool.emplace_back([&fn, begin, end] { fn(begin, end); });
  }
  for (auto& t : pool) {
    t.join();
  }
}

}  // namespace thermagrid
