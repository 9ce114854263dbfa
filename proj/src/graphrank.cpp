#include "kpbench/graphrank.hpp"

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace kpbench {

std::vector<double> pagerank(const std::vector<std::vector<double>>& weights,
                             double damping, double tol, int max_iter) {
  const std::size_t n = weights.size();
  if (n == 0) return {};
  if (damping <= 0.0 || damping >= 1.0)
    throw std::invalid_argument("damping must be in (0,1)");
  for (const auto& row : weights)
    if (row.size() != n)
      throw std::invalid_argument("weight matrix must be square");

  std::vector<double> out_weight(n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (weights[i][j] < 0.0)
        throw std::invalid_argument("negative edge weight");
      if (i != j) out_weight[i] += weights[i][j];
    }

  std::vector<double> score(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  for (int iter = 0; iter < max_iter; ++iter) {
    double dangling = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      if (out_weight[i] == 0.0) dangling += score[i];

    double base = (1.0 - damping) / static_cast<double>(n) +
                  damping * dangling / static_cast<double>(n);
    for (std::size_t j = 0; j < n; ++j) next[j] = base;
    for (std::size_t i = 0; i < n; ++i) {
      if (out_weight[i] == 0.0) continue;
      double share = damping * score[i] / out_weight[i];
      for (std::size_t j = 0; j < n; ++j)
        if (i != j && weights[i][j] > 0.0) next[j] += share * weights[i][j];
    }

    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) delta += std::fabs(next[i] - score[i]);
    score.swap(next);
    if (delta < tol) break;
  }
  return score;
}

}  // namespace kpbench
