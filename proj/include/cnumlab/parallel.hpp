#ifndef CNUMLAB_PARALLEL_HPP
#define CNUMLAB_PARALLEL_HPP

#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace cnumlab {

// Worker count resolution: explicit value, else CNUMLAB_WORKERS, else the
// hardware count.  Results are written into per-index slots and reduced in
// index order by the caller, so the output is independent of the schedule.
struct ParallelConfig {
  int workers = 0;  // 0 = auto

  int resolve() const {
    if (workers > 0) return workers;
    if (const char* env = std::getenv("CNUMLAB_WORKERS")) {
      const int v = std::atoi(env);
      if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
  }
};

// Static-chunk parallel map over [0, count); f(i) must only touch slot i of
// whatever it writes.  Exceptions are rethrown on the calling thread.
template <typename F>
void parallel_for(std::size_t count, const ParallelConfig& config, F&& f) {
  const int workers = std::min<std::size_t>(config.resolve(), count ? count : 1);
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) f(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::string> errors(workers);
  const std::size_t chunk = (count + workers - 1) / workers;
  for (int w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(count, lo + chunk);
    pool.emplace_back([&, w, lo, hi] {
      try {
        for (std::size_t i = lo; i < hi; ++i) f(i);
      } catch (const std::exception& e) {
        errors[w] = e.what();
      } catch (...) {
        errors[w] = "unknown error";
      }
    });
  }
  for (auto& t : pool) t.join();
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error("parallel_for: " + e);
}

}  // namespace cnumlab

#endif
