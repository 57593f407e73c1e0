#ifndef SHC_PARALLEL_HPP
#define SHC_PARALLEL_HPP

#include <cstdint>
#include <functional>
#include <vector>

namespace shc {

// Deterministic parallel map-reduce over a path index range.  The range
// is cut into fixed-size blocks (independent of the worker count); each
// block produces a partial accumulator, and partials are merged in block
// index order on the calling thread.  Results are therefore bit-identical
// for any number of workers.
//
// Accum must be default-constructible; merge(into, from) folds partials.
template <class Accum>
Accum parallel_reduce(uint64_t n, int workers,
                      const std::function<void(uint64_t, Accum&)>& body,
                      const std::function<void(Accum&, const Accum&)>& merge);

// Worker count actually used: explicit value, or 1 if <= 0.
int resolve_workers(int requested);

namespace detail {
void run_blocks(uint64_t n_blocks, int workers,
                const std::function<void(uint64_t)>& block_fn);
constexpr uint64_t kBlockSize = 8192;
}  // namespace detail

template <class Accum>
Accum parallel_reduce(uint64_t n, int workers,
                      const std::function<void(uint64_t, Accum&)>& body,
                      const std::function<void(Accum&, const Accum&)>& merge) {
  const uint64_t n_blocks = (n + detail::kBlockSize - 1) / detail::kBlockSize;
  std::vector<Accum> partials(n_blocks);
  detail::run_blocks(n_blocks, workers, [&](uint64_t b) {
    const uint64_t lo = b * detail::kBlockSize;
    const uint64_t hi = std::min(n, lo + detail::kBlockSize);
    Accum acc{};
    for (uint64_t i = lo; i < hi; ++i) body(i, acc);
    partials[b] = std::move(acc);
  });
  Accum total{};
  for (uint64_t b = 0; b < n_blocks; ++b) merge(total, partials[b]);
  return total;
}

}  // namespace shc

#endif  // SHC_PARALLEL_HPP
