#pragma once

#include <vector>

#include "excess/rational.hpp"

namespace excess {

// Connected labeled graph counts c(n, m) by the subtraction recurrence
// anchored at the component of vertex 1:
//   c(n,m) = g(n,m) - sum_{s=1}^{n-1} binom(n-1, s-1) sum_j c(s,j) g(n-s, m-j),
//   g(n,m) = binom(binom(n,2), m).
// Pure integer arithmetic; rows are filled once at construction.
class ConnectedCountTable {
public:
    /// Counts for all n <= n_max and m <= min(binom(n,2), m_max).
    ConnectedCountTable(int n_max, int m_max);

    int n_max() const { return n_max_; }
    int m_max() const { return m_max_; }

    /// c(n, m); zero for m outside [0, binom(n,2)] but within the table.
    const Int& count(int n, int m) const;

    /// g(n, m) = binom(binom(n,2), m).
    const Int& all_graphs(int n, int m) const;

private:
    int n_max_;
    int m_max_;
    std::vector<std::vector<Int>> c_;
    std::vector<std::vector<Int>> g_;
    Int zero_;
};

/// One-off c(n, m); m must lie in [0, binom(n,2)]. Backed by a shared table
/// that grows on demand (bounded by the configured recurrence cap).
Int connected_recurrence_count(int n, int m);

}  // namespace excess
