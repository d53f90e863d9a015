#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace sphd {

// Process-wide cap on worker threads for the bulk loops below. Defaults to
// the hardware concurrency. Results are identical for every cap: work is
// split into chunks whose boundaries depend only on the problem size, and
// chunk results are merged in chunk order.
void set_max_threads(int n);
int max_threads();

// Runs fn(chunk_index, begin, end) over disjoint chunks covering [0, n).
void parallel_chunks(std::int64_t n, std::int64_t chunk_size,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn);

// Convenience: element ranges without chunk bookkeeping.
void parallel_range(std::int64_t n,
                    const std::function<void(std::int64_t, std::int64_t)>& fn,
                    std::int64_t chunk_size = 8192);

// Pairwise (tree) summation over [lo, hi). Base blocks accumulate in four
// interleaved lanes (j, j+1, j+2, j+3 round-robin) and the block results are
// combined by recursive halving, so the rounding pattern is a fixed tree:
// the value never depends on thread count and the error grows O(log n).
template <class F>
double pairwise_sum(std::int64_t lo, std::int64_t hi, F&& term) {
  const std::int64_t n = hi - lo;
  if (n <= 0) return 0.0;
  if (n <= 256) {
    double a0 = 0.0, a1 = 0.0, a2 = 0.0, a3 = 0.0;
    std::int64_t j = lo;
    for (; j + 4 <= hi; j += 4) {
      a0 += term(j);
      a1 += term(j + 1);
      a2 += term(j + 2);
      a3 += term(j + 3);
    }
    for (; j < hi; ++j) a0 += term(j);
    return (a0 + a1) + (a2 + a3);
  }
  const std::int64_t mid = lo + n / 2;
  return pairwise_sum(lo, mid, term) + pairwise_sum(mid, hi, term);
}

// Parallel pairwise sum: per-chunk partial sums (each itself a pairwise sum)
// stored by chunk index, then combined by recursive halving.
double parallel_pairwise_sum(std::int64_t n,
                             const std::function<double(std::int64_t, std::int64_t)>& chunk_sum,
                             std::int64_t chunk_size = 8192);

// Parallel argmax of a score: returns (best_value, best_index) with ties
// broken toward the lowest index regardless of thread count.
std::pair<double, std::int64_t> parallel_argmax(
    std::int64_t n,
    const std::function<std::pair<double, std::int64_t>(std::int64_t, std::int64_t)>& chunk_best,
    std::int64_t chunk_size = 8192);

}  // namespace sphd
