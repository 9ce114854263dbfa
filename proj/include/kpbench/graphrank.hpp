#ifndef KPBENCH_GRAPHRANK_HPP
#define KPBENCH_GRAPHRANK_HPP

#include <vector>

namespace kpbench {

/// Weighted PageRank with uniform teleport over a non-negative weight
/// matrix; weights[i][j] is the weight of the edge i->j (use a symmetric
/// matrix for undirected graphs). The rank mass of dangling nodes is
/// redistributed uniformly, so scores sum to 1. Iterates until the L1 delta
/// drops below `tol` or `max_iter` sweeps, whichever comes first.
std::vector<double> pagerank(const std::vector<std::vector<double>>& weights,
                             double damping, double tol = 1e-6,
                             int max_iter = 100);

}  // namespace kpbench

#endif  // KPBENCH_GRAPHRANK_HPP
