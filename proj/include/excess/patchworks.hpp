#pragma once

#include <functional>
#include <vector>

#include "excess/graph_gf.hpp"
#include "excess/multigraph.hpp"
#include "excess/rational.hpp"

namespace excess {

// Bivariate polynomial in (z, u): z marks vertices (EGF convention with the
// multigraph 1/(2^m m!) edge weight folded in), u marks the number of parts.
struct PatchworkPolynomial {
    int excess = 0;
    std::vector<std::vector<Rational>> zu;  // zu[z_deg][u_deg]

    int z_degree() const;
    int u_degree() const;
    Rational coeff(int z_deg, int u_deg) const;
    bool equal_padded(const PatchworkPolynomial& other) const;

    /// Substitute a numeric value for u; result is a z-polynomial.
    std::vector<Rational> at_u(const Rational& u_value) const;
};

// A patchwork as a concrete object: parts are loops or double edges of the
// union multigraph; parts sharing an edge label necessarily share its
// endpoints, and the union covers every vertex and edge label.
struct PatchworkPart {
    std::vector<int> vertices;     // one vertex for a loop, two for a double edge
    std::vector<int> edge_labels;  // one label for a loop, two for a double edge
};

struct PatchworkStruct {
    int n = 0;                      // vertices 1..n of the union
    SmallMultigraph union_graph;    // MG(P)
    std::vector<PatchworkPart> parts;

    int part_count() const { return static_cast<int>(parts.size()); }
    int excess() const { return union_graph.excess(); }
};

/// Visit every patchwork of the given excess whose union has exactly n
/// vertices (isolated parts included). Guarded like the full enumeration.
void for_each_patchwork(int excess, int n, const std::function<void(const PatchworkStruct&)>& fn);

PatchworkPolynomial patchwork_mul(const PatchworkPolynomial& a, const PatchworkPolynomial& b,
                                  int z_cap, int u_cap);

/// Patchworks made of isolated parts only: e^{u(z/2 + z^2/4)} truncated.
PatchworkPolynomial patchwork_isolated_closed_form(int z_cap, int u_cap);

/// P*_excess: patchworks of the given excess in which every part shares a
/// vertex with another part. Exhaustive over n <= vertex_cap (default
/// 4*excess) with m = n + excess; the boundary cell n = 4*excess must come
/// out empty and is asserted when scanned.
PatchworkPolynomial enumerate_patchworks_no_isolated(int excess, int vertex_cap = -1);

const PatchworkPolynomial& cached_patchwork_star(int excess);

/// All patchworks of the given excess (isolated parts allowed) up to
/// z-degree z_cap, enumerated at the level of raw labeled multigraphs.
/// Guarded at excess <= 2, z_cap <= 4.
PatchworkPolynomial patchwork_full_enumeration(int excess, int z_cap);

/// Full enumeration equals isolated-closed-form times the no-isolated part.
bool patchwork_factorization_check(int excess, int z_cap);

// Exhaustive scan of multigraphs with min degree >= 3 and excess <= k.
// The scan deliberately ranges over n <= 2k + vertex_margin so the bounds
// n <= 2k, m <= 3k are observed rather than assumed.
struct Mindeg3Scan {
    struct Cell {
        int n = 0;
        int m = 0;
        Int count;
    };
    std::vector<Cell> cells;  // non-empty cells only, (n, m) ascending
    int max_n = 0;
    int max_m = 0;
};

Mindeg3Scan scan_mindeg3(int k, int vertex_margin = 2);

/// Every instance, labels and orientations distinct. Guarded at k <= 2.
std::vector<SmallMultigraph> mindeg3_multigraphs(int k);

/// Graphs with minimum degree >= 2, by excess 0..k_max, via the patchwork
/// route. Requires the patchwork polynomials up to k_max (cap 3).
ExcessIndexedSeries core_series(int n_max, int k_max);
const ExcessIndexedSeries& cached_core_series(int n_max, int k_max);

/// sgpos_k obtained by substituting the tree series into the core series
/// and dividing by e^V. Throws identity_violation if the result disagrees
/// with the exp-route sgpos_series.
Series sgpos_via_patchworks(int k, int N);

/// The single ell-term of the patchwork expansion of sgpos_k:
/// (2(k-ell)-1)!! [x^{2(k-ell)}] P_ell(T e^x, -1) e^{-V} B(T, x)^{k-ell+1/2}.
/// Summed over ell = 0..k (with k <= 3) this reassembles sgpos_k.
Series sgpos_patchwork_slice(int k, int ell, int N);

}  // namespace excess
