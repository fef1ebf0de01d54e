#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lox {

/// Pairwise (fixed binary tree) summation. The reduction order depends only
/// on the length of the input, so results are bit-stable for a given input
/// regardless of how the terms were produced.
inline double pairwise_sum(std::span<const double> v) {
  const std::size_t n = v.size();
  if (n == 0) return 0.0;
  if (n <= 8) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
  }
  const std::size_t h = n / 2;
  return pairwise_sum(v.first(h)) + pairwise_sum(v.subspan(h));
}

inline double pairwise_sum(const std::vector<double> &v) {
  return pairwise_sum(std::span<const double>(v));
}

/// Accumulates terms in order and reduces pairwise on demand.
class PairwiseAccumulator {
public:
  void add(double x) { terms_.push_back(x); }
  double total() const { return pairwise_sum(terms_); }
  std::size_t size() const { return terms_.size(); }

private:
  std::vector<double> terms_;
};

} // namespace lox
