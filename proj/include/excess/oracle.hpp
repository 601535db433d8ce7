#pragma once

#include <functional>
#include <vector>

#include "excess/multigraph.hpp"
#include "excess/rational.hpp"

namespace excess {

// Brute-force ground truth over all labeled simple graphs on n vertices,
// scanned as edge-subset bitmasks of K_n.
enum class GraphPredicate {
    All,
    Connected,
    MinDegree2,
    PositiveExcessComponents,  // every component has excess >= 1
    Unicyclic,                 // connected with excess exactly 0
};

struct GraphCountTable {
    int n = 0;
    std::vector<GraphPredicate> predicates;
    // counts[p][m] = number of graphs with m edges satisfying predicates[p]
    std::vector<std::vector<Int>> counts;

    const std::vector<Int>& row(GraphPredicate p) const;
    Int total(GraphPredicate p) const;
};

/// Scans all 2^binom(n,2) graphs; n > 8 is refused, n = 8 only when
/// allow_large is set (minutes of runtime).
GraphCountTable enum_graphs(int n, std::vector<GraphPredicate> predicates,
                            bool allow_large = false, int threads = 0);

// Weighted multigraph totals with the 1/(2^m m! n!) convention.
struct MultigraphTally {
    int n = 0;
    int m = 0;
    Rational all;
    Rational loopless_simple;            // no loops, no double edges
    Rational loopless_simple_connected;  // above and connected
    Rational min_degree2;                // multicores
    Rational connected;
    Rational positive_excess_components;
};

/// Exhaustive scan of all labeled oriented multigraphs on vertices 1..n
/// with edge labels 1..m. Guarded at n <= 4, m <= 5.
MultigraphTally enum_multigraphs(int n, int m);

/// Visit every labeled multigraph in the deterministic code order.
void for_each_multigraph(int n, int m, const std::function<void(const SmallMultigraph&)>& fn);

}  // namespace excess
