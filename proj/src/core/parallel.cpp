#include "core/parallel.hpp"

#include <atomic>
#include <stdexcept>
#include <thread>

namespace sphd {

namespace {

std::atomic<int> g_max_threads{0};  // 0 = use hardware concurrency

int hardware_threads() {
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

}  // namespace

void set_max_threads(int n) {
  if (n < 0) throw std::invalid_argument("set_max_threads: n must be >= 0");
  g_max_threads.store(n);
}

int max_threads() {
  const int n = g_max_threads.load();
  return n > 0 ? n : hardware_threads();
}

void parallel_chunks(std::int64_t n, std::int64_t chunk_size,
                     const std::function<void(std::int64_t, std::int64_t, std::int64_t)>& fn) {
  if (n <= 0) return;
  if (chunk_size < 1) chunk_size = 1;
  const std::int64_t n_chunks = (n + chunk_size - 1) / chunk_size;
  const int workers = static_cast<int>(std::min<std::int64_t>(max_threads(), n_chunks));

  auto run_chunk = [&](std::int64_t c) {
    const std::int64_t lo = c * chunk_size;
    const std::int64_t hi = std::min<std::int64_t>(lo + chunk_size, n);
    fn(c, lo, hi);
  };

  if (workers <= 1) {
    for (std::int64_t c = 0; c < n_chunks; ++c) run_chunk(c);
    return;
  }

  std::atomic<std::int64_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::int64_t c = next.fetch_add(1);
      if (c >= n_chunks) return;
      run_chunk(c);
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int t = 1; t < workers; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

void parallel_range(std::int64_t n,
                    const std::function<void(std::int64_t, std::int64_t)>& fn,
                    std::int64_t chunk_size) {
  parallel_chunks(n, chunk_size,
                  [&](std::int64_t, std::int64_t lo, std::int64_t hi) { fn(lo, hi); });
}

namespace {

double combine_pairwise(const std::vector<double>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return combine_pairwise(v, lo, mid) + combine_pairwise(v, mid, hi);
}

}  // namespace

double parallel_pairwise_sum(std::int64_t n,
                             const std::function<double(std::int64_t, std::int64_t)>& chunk_sum,
                             std::int64_t chunk_size) {
  if (n <= 0) return 0.0;
  const std::int64_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<double> partial(static_cast<std::size_t>(n_chunks));
  parallel_chunks(n, chunk_size, [&](std::int64_t c, std::int64_t lo, std::int64_t hi) {
    partial[static_cast<std::size_t>(c)] = chunk_sum(lo, hi);
  });
  return combine_pairwise(partial, 0, partial.size());
}

std::pair<double, std::int64_t> parallel_argmax(
    std::int64_t n,
    const std::function<std::pair<double, std::int64_t>(std::int64_t, std::int64_t)>& chunk_best,
    std::int64_t chunk_size) {
  if (n <= 0) throw std::invalid_argument("parallel_argmax: empty range");
  const std::int64_t n_chunks = (n + chunk_size - 1) / chunk_size;
  std::vector<std::pair<double, std::int64_t>> partial(static_cast<std::size_t>(n_chunks));
  parallel_chunks(n, chunk_size, [&](std::int64_t c, std::int64_t lo, std::int64_t hi) {
    partial[static_cast<std::size_t>(c)] = chunk_best(lo, hi);
  });
  std::pair<double, std::int64_t> best = partial[0];
  for (std::size_t c = 1; c < partial.size(); ++c) {
    const auto& p = partial[c];
    if (p.first > best.first || (p.first == best.first && p.second < best.second)) best = p;
  }
  return best;
}

}  // namespace sphd
