#include "shc/parallel.hpp"

#include <atomic>
#include <thread>

namespace shc {

int resolve_workers(int requested) { return requested > 0 ? requested : 1; }

namespace detail {

void run_blocks(uint64_t n_blocks, int workers,
                const std::function<void(uint64_t)>& block_fn) {
  workers = resolve_workers(workers);
  if (workers == 1 || n_blocks <= 1) {
    for (uint64_t b = 0; b < n_blocks; ++b) block_fn(b);
    return;
  }
  std::atomic<uint64_t> next{0};
  auto worker = [&] {
    for (;;) {
      const uint64_t b = next.fetch_add(1);
      if (b >= n_blocks) return;
      block_fn(b);
    }
  };
  std::vector<std::thread> pool;
  const int n_threads = static_cast<int>(
      std::min<uint64_t>(static_cast<uint64_t>(workers), n_blocks));
  pool.reserve(n_threads);
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace detail
}  // namespace shc
