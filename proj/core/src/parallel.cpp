#include "pflow/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace pflow {

namespace {

int g_threads = -1;  // -1: uninitialized

int resolve_threads() {
  if (g_threads == -1) {
    int n = 0;
    if (const char* env = std::getenv("PFLOW_THREADS")) n = std::atoi(env);
    g_threads = n;
  }
  int n = g_threads;
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  return n > 0 ? n : 1;
}

constexpr std::size_t kChunk = 4096;

}  // namespace

void set_thread_count(int n) { g_threads = n; }

int thread_count() { return resolve_threads(); }

void parallel_for(std::size_t n,
                  const std::function<void(std::size_t, std::size_t)>& body) {
  if (n == 0) return;
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  const int workers = std::min<std::size_t>(resolve_threads(), nchunks);
  if (workers <= 1) {
    body(0, n);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto run = [&]() {
    for (;;) {
      const std::size_t c = next.fetch_add(1);
      if (c >= nchunks) return;
      body(c * kChunk, std::min(n, (c + 1) * kChunk));
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int i = 0; i + 1 < workers; ++i) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

double parallel_reduce(
    std::size_t n,
    const std::function<double(std::size_t, std::size_t)>& chunk_sum) {
  if (n == 0) return 0.0;
  const std::size_t nchunks = (n + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks, 0.0);
  const int workers = std::min<std::size_t>(resolve_threads(), nchunks);
  if (workers <= 1) {
    for (std::size_t c = 0; c < nchunks; ++c)
      partial[c] = chunk_sum(c * kChunk, std::min(n, (c + 1) * kChunk));
  } else {
    std::atomic<std::size_t> next{0};
    auto run = [&]() {
      for (;;) {
        const std::size_t c = next.fetch_add(1);
        if (c >= nchunks) return;
        partial[c] = chunk_sum(c * kChunk, std::min(n, (c + 1) * kChunk));
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int i = 0; i + 1 < workers; ++i) pool.emplace_back(run);
    run();
    for (auto& t : pool) t.join();
  }
  double acc = 0.0;
  for (double v : partial) acc += v;
  return acc;
}

}  // namespace pflow
