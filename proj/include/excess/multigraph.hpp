#pragma once

#include <vector>

namespace excess {

// Labeled multigraph: vertices 1..n, edges carry labels 1..m (the position
// in `edges` is label-1) and an orientation. Loops and parallel edges are
// allowed; a loop adds 2 to the degree of its vertex.
struct MultigraphEdge {
    int tail = 0;
    int head = 0;
};

struct SmallMultigraph {
    int n = 0;
    std::vector<MultigraphEdge> edges;

    int m() const { return static_cast<int>(edges.size()); }
    int excess() const { return m() - n; }
};

int min_degree(const SmallMultigraph& g);
bool is_connected(const SmallMultigraph& g);
bool has_loop(const SmallMultigraph& g);
bool has_double_edge(const SmallMultigraph& g);

/// Every connected component has more edges than vertices.
bool all_components_positive_excess(const SmallMultigraph& g);

}  // namespace excess
