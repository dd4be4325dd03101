#pragma once

#include <algorithm>
#include <optional>
#include <tuple>
#include <vector>

#include "cpbp/graph.hpp"
#include "cpbp/rational.hpp"

namespace cpbp {

enum class HPart { graph_part, indep_left, clique_left, clique_right, indep_right };

/// The five-part composite used for the complementary partition lower bound:
/// a graph on m vertices joined to two independent l-sets, which in turn hang
/// off a joined pair of l-cliques.
struct JoinGraph {
    Graph graph;
    int m = 0;
    int l = 0;
    std::vector<HPart> part;  // one label per vertex

    std::vector<int> part_vertices(HPart p) const {
        std::vector<int> vs;
        for (int v = 0; v < graph.n; ++v)
            if (part[v] == p) vs.push_back(v);
        return vs;
    }
};

/// Layout: [0,m) the graph part, then indep_left, clique_left, clique_right,
/// indep_right, each of size l. Edges: g itself; all graph-to-independent
/// edges; each independent set joined to its adjacent clique; the two cliques
/// joined to each other; both cliques complete.
inline JoinGraph build_H(const Graph& g, int l) {
    int m = g.n;
    if (m + 4 * l > kMaxVertices) throw capacity_error("build_H: m + 4l exceeds 64 vertices");
    if (l < 1) throw std::invalid_argument("build_H: need l >= 1");
    JoinGraph H;
    H.m = m;
    H.l = l;
    H.graph = Graph(m + 4 * l);
    H.part.assign(m + 4 * l, HPart::graph_part);
    int il = m, cl = m + l, cr = m + 2 * l, ir = m + 3 * l;
    for (int v = 0; v < l; ++v) {
        H.part[il + v] = HPart::indep_left;
        H.part[cl + v] = HPart::clique_left;
        H.part[cr + v] = HPart::clique_right;
        H.part[ir + v] = HPart::indep_right;
    }
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (g.edge(i, j)) H.graph.add_edge(i, j);
    for (int i = 0; i < m; ++i)
        for (int v = 0; v < l; ++v) {
            H.graph.add_edge(i, il + v);
            H.graph.add_edge(i, ir + v);
        }
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b) {
            H.graph.add_edge(il + a, cl + b);
            H.graph.add_edge(cr + a, ir + b);
            H.graph.add_edge(cl + a, cr + b);
        }
    for (int a = 0; a < l; ++a)
        for (int b = a + 1; b < l; ++b) {
            H.graph.add_edge(cl + a, cl + b);
            H.graph.add_edge(cr + a, cr + b);
        }
    return H;
}

/// Fixed part on 4l vertices: independent l-set, l-clique, l-clique,
/// independent l-set, consecutive parts fully joined.
inline Graph build_Y(int l) {
    if (4 * l > kMaxVertices) throw capacity_error("build_Y: 4l exceeds 64 vertices");
    Graph y(4 * l);
    int il = 0, cl = l, cr = 2 * l, ir = 3 * l;
    for (int a = 0; a < l; ++a)
        for (int b = 0; b < l; ++b) {
            y.add_edge(il + a, cl + b);
            y.add_edge(cl + a, cr + b);
            y.add_edge(cr + a, ir + b);
        }
    for (int a = 0; a < l; ++a)
        for (int b = a + 1; b < l; ++b) {
            y.add_edge(cl + a, cl + b);
            y.add_edge(cr + a, cr + b);
        }
    return y;
}

/// Splits the composite into the edge-disjoint join part (g joined with the
/// 2l independent vertices) and the fixed part Y.
inline std::pair<Graph, Graph> decompose_H(const JoinGraph& H) {
    int m = H.m, l = H.l;
    Graph x(m + 2 * l);
    int il = m, cl = m + l, cr = m + 2 * l, ir = m + 3 * l;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (H.graph.edge(i, j)) x.add_edge(i, j);
    for (int i = 0; i < m; ++i)
        for (int v = 0; v < l; ++v) {
            x.add_edge(i, m + v);          // indep_left copy
            x.add_edge(i, m + l + v);      // indep_right copy
        }
    Graph y(4 * l);
    auto ymap = [&](int v) {  // host vertex -> Y vertex
        if (v >= il && v < cl) return v - il;
        if (v >= cl && v < cr) return l + (v - cl);
        if (v >= cr && v < ir) return 2 * l + (v - cr);
        return 3 * l + (v - ir);
    };
    for (int u = m; u < H.graph.n; ++u)
        for (int v = u + 1; v < H.graph.n; ++v)
            if (H.graph.edge(u, v)) y.add_edge(ymap(u), ymap(v));
    return {x, y};
}

/// Certified lower bound 2*l^2 - 2*binom(l,2) + ceil(3*l^2/4) on the fixed
/// part's clique partition number.
inline Rat y_lower_bound(int l) {
    if (l < 1) throw std::invalid_argument("y_lower_bound: need l >= 1");
    long l2 = long(l) * l;
    long fixed = 2 * l2 - l * (l - 1);
    long profile = (3 * l2 + 3) / 4;  // ceil(3 l^2 / 4)
    return Rat(fixed + profile);
}

/// Exact minimum of sum(binom(a_i,2) + binom(b_i,2) + 1) over multisets of
/// positive integer pairs with sum(a_i * b_i) = total. Small DP; this is the
/// independent route behind the 3/4 coefficient in y_lower_bound.
inline long block_profile_minimum(long total) {
    const long kInf = 1L << 60;
    std::vector<long> best(total + 1, kInf);
    best[0] = 0;
    for (long s = 1; s <= total; ++s)
        for (long a = 1; a * 1 <= s; ++a)
            for (long b = a; a * b <= s; ++b) {
                long cost = a * (a - 1) / 2 + b * (b - 1) / 2 + 1;
                if (best[s - a * b] + cost < best[s]) best[s] = best[s - a * b] + cost;
            }
    return best[total];
}

/// Lower bound on cp(H) + cp(complement H) for any m-vertex graph inside the
/// composite: the two join parts contribute 4*m*l - binom(m,2) between them
/// and each fixed part at least (7/4) l^2.
inline Rat h_lower_bound(int m, int l) {
    if (m > 2 * l)
        throw std::invalid_argument("h_lower_bound: requires m <= 2l");
    Rat join_terms = Rat(4) * m * l - Rat(long(m) * (m - 1) / 2);
    return join_terms + rat(7 * long(l) * l, 2);
}

struct HOptimum {
    int m = 0;
    int l = 0;
    Rat bound;
};

/// Integer sweep of h_lower_bound over m + 4l = n; ties toward smaller m.
inline std::optional<HOptimum> optimize_h(int n) {
    std::optional<HOptimum> best;
    for (int m = 1; m + 4 <= n; ++m) {
        if ((n - m) % 4 != 0) continue;
        int l = (n - m) / 4;
        if (m > 2 * l) continue;
        Rat b = h_lower_bound(m, l);
        if (!best || b > best->bound) best = HOptimum{m, l, b};
    }
    return best;
}

/// The continuous optimum m = (9/8) l of the same expression, normalized by
/// (m + 4l)^2, evaluated exactly.
inline Rat h_continuous_coefficient() {
    Rat m(9, 8);           // in units of l
    Rat bound = Rat(4) * m - m * m / 2 + Rat(7, 2);   // per l^2
    Rat n = m + 4;                                    // per l
    return bound / (n * n);
}

}  // namespace cpbp
