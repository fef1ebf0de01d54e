#pragma once

#include <cstdlib>
#include <future>
#include <string>
#include <vector>

namespace lox {

/// Worker count for corpus-level parallelism: LOX_THREADS if set, else 1.
/// Results never depend on the count; it only partitions independent items.
inline int default_thread_count() {
  if (const char *env = std::getenv("LOX_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

/// Applies f to every item and returns results in item order. Items are
/// independent; each result is computed by exactly one invocation of f, so
/// the output is identical for any thread count.
template <class In, class F>
auto parallel_map(const std::vector<In> &items, F f, int threads = 0) {
  using Out = decltype(f(items.front()));
  if (threads <= 0) threads = default_thread_count();
  std::vector<Out> out(items.size());
  if (threads == 1 || items.size() <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = f(items[i]);
    return out;
  }
  std::vector<std::future<void>> futs;
  const std::size_t stride =
      (items.size() + static_cast<std::size_t>(threads) - 1) /
      static_cast<std::size_t>(threads);
  for (int t = 0; t < threads; ++t) {
    const std::size_t lo = static_cast<std::size_t>(t) * stride;
    const std::size_t hi = std::min(items.size(), lo + stride);
    if (lo >= hi) break;
    futs.push_back(std::async(std::launch::async, [&, lo, hi] {
      for (std::size_t i = lo; i < hi; ++i) out[i] = f(items[i]);
    }));
  }
  for (auto &fu : futs) fu.get();
  return out;
}

} // namespace lox
