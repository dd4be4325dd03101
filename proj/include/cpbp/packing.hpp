#pragma once

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "cpbp/canonical.hpp"
#include "cpbp/enumerate.hpp"
#include "cpbp/graph.hpp"
#include "cpbp/lp.hpp"
#include "cpbp/parallel.hpp"
#include "cpbp/partition.hpp"
#include "cpbp/rational.hpp"

namespace cpbp {

/// Objective coefficients for clique variables, keyed by clique size with an
/// optional per-clique override for isomorphism-type weightings.
struct ObjectiveWeights {
    std::map<int, Rat> by_size;
    std::function<Rat(const Graph&, std::uint64_t)> by_clique;  // optional

    Rat coeff(const Graph& g, std::uint64_t clique) const {
        if (by_clique) return by_clique(g, clique);
        auto it = by_size.find(std::popcount(clique));
        return it == by_size.end() ? Rat(0) : it->second;
    }

    /// binom(i,2) - 1 for i = 3..r.
    static ObjectiveWeights packing_default(int r) {
        ObjectiveWeights w;
        for (int i = 3; i <= r; ++i) w.by_size[i] = Rat(long(i) * (i - 1) / 2 - 1);
        return w;
    }
};

struct PackingSolution {
    Rat value;
    std::vector<std::pair<std::uint64_t, Rat>> weights;      // support of the packing
    std::vector<std::pair<std::pair<int, int>, Rat>> duals;  // price per edge of g
};

/// Optimal fractional clique packing value: one variable per clique of size
/// 3..r, one unit capacity constraint per edge, solved exactly.
inline PackingSolution nu_full(const Graph& g, int r,
                               const ObjectiveWeights& gamma) {
    PackingSolution out;
    out.value = 0;
    CliqueSet cs = enumerate_cliques(g, r);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.edge(i, j)) out.duals.push_back({{i, j}, Rat(0)});
    if (cs.members.empty()) return out;

    // constraints only for edges that appear in some clique
    std::map<std::pair<int, int>, int> edge_row;
    for (auto mask : cs.members) {
        auto vs = mask_to_vertices(mask);
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                edge_row.try_emplace({vs[a], vs[b]}, -1);
    }
    int rows = 0;
    for (auto& [e, idx] : edge_row) idx = rows++;

    std::vector<LpColumn> cols;
    cols.reserve(cs.members.size());
    for (auto mask : cs.members) {
        LpColumn col;
        col.objective = gamma.coeff(g, mask);
        auto vs = mask_to_vertices(mask);
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                col.rows.push_back(edge_row[{vs[a], vs[b]}]);
        cols.push_back(std::move(col));
    }

    LpSolution lp = simplex_max_unit_rhs(rows, cols);
    out.value = lp.value;
    for (std::size_t j = 0; j < cs.members.size(); ++j)
        if (sgn(lp.primal[j]) != 0) out.weights.push_back({cs.members[j], lp.primal[j]});
    for (auto& [e, price] : out.duals) {
        auto it = edge_row.find(e);
        if (it != edge_row.end()) price = lp.dual[it->second];
    }
    return out;
}

inline Rat nu(const Graph& g, int r, const ObjectiveWeights& gamma) {
    return nu_full(g, r, gamma).value;
}

inline Rat nu(const Graph& g, int r) { return nu(g, r, ObjectiveWeights::packing_default(r)); }

inline Rat nu_pair(const Graph& g, int r, const ObjectiveWeights& gamma) {
    return nu(g, r, gamma) + nu(complement(g), r, gamma);
}

/// Greedy edge-disjoint packing of 4-cliques then triangles; a certified
/// lower bound on nu used to discard hopeless candidates cheaply.
inline Rat greedy_packing_value(const Graph& g, const ObjectiveWeights& gamma) {
    Graph avail = g;
    Rat total = 0;
    for (int i = 0; i < avail.n; ++i)
        for (int j = i + 1; j < avail.n; ++j) {
            if (!avail.edge(i, j)) continue;
            std::uint64_t common = avail.adj[i] & avail.adj[j];
            std::uint64_t c = common;
            while (c) {
                int a = std::countr_zero(c);
                c &= c - 1;
                std::uint64_t both = common & avail.adj[a];
                both &= ~((std::uint64_t{2} << a) - 1);  // b > a
                if (both) {
                    int b = std::countr_zero(both);
                    std::uint64_t quad = (std::uint64_t{1} << i) | (std::uint64_t{1} << j) |
                                         (std::uint64_t{1} << a) | (std::uint64_t{1} << b);
                    total += gamma.coeff(g, quad);
                    for (int u : mask_to_vertices(quad))
                        for (int v : mask_to_vertices(quad))
                            if (u < v) avail.remove_edge(u, v);
                    break;
                }
            }
        }
    for (int i = 0; i < avail.n; ++i)
        for (int j = i + 1; j < avail.n; ++j) {
            if (!avail.edge(i, j)) continue;
            std::uint64_t common = avail.adj[i] & avail.adj[j];
            if (common) {
                int a = std::countr_zero(common);
                std::uint64_t tri = (std::uint64_t{1} << i) | (std::uint64_t{1} << j) |
                                    (std::uint64_t{1} << a);
                total += gamma.coeff(g, tri);
                avail.remove_edge(i, j);
                avail.remove_edge(i, a);
                avail.remove_edge(j, a);
            }
        }
    return total;
}

struct SweepEntry {
    Graph graph;
    Rat value;  // nu(g) + nu(complement)
};

/// Values for every isomorphism class on n vertices, in canonical order.
inline std::vector<SweepEntry> f_sweep(int n, int r, const ObjectiveWeights& gamma,
                                       int workers = 1) {
    std::vector<Graph> graphs = enumerate_graphs(n);
    std::vector<SweepEntry> entries(graphs.size());
    parallel_for(graphs.size(), workers, [&](std::size_t i) {
        entries[i] = SweepEntry{graphs[i], nu_pair(graphs[i], r, gamma)};
    });
    return entries;
}

struct FExhaustive {
    Rat value;
    std::vector<CanonicalForm> minimizers;
};

/// Exact f(n) = min over all n-vertex graphs of nu(g) + nu(complement g),
/// with every minimizer's canonical form.
inline FExhaustive f_exhaustive(int n, int r,
                                const ObjectiveWeights& gamma,
                                int workers = 1) {
    if (n > 8) throw capacity_error("f_exhaustive capped at n = 8");
    auto entries = f_sweep(n, r, gamma, workers);
    FExhaustive out;
    bool first = true;
    for (const auto& e : entries) {
        if (first || e.value < out.value) {
            out.value = e.value;
            out.minimizers.clear();
            first = false;
        }
        if (e.value == out.value) out.minimizers.push_back(canonical_form(e.graph));
    }
    std::sort(out.minimizers.begin(), out.minimizers.end());
    return out;
}

inline FExhaustive f_exhaustive(int n, int r, int workers = 1) {
    return f_exhaustive(n, r, ObjectiveWeights::packing_default(r), workers);
}

/// Integer optimum over r-restricted clique partitions, through the exact
/// partition engine: v_r(g) = |E| - cp(g, r).
inline long v_integer(const Graph& g, int r, int max_edges = 30) {
    return g.edge_count() - cp_bruteforce(g, r, max_edges);
}

/// CPLEX-style LP text export of the packing program, for cross-checks with
/// external solvers.
inline std::string nu_lp_text(const Graph& g, int r, const ObjectiveWeights& gamma) {
    CliqueSet cs = enumerate_cliques(g, r);
    std::ostringstream os;
    os << "Maximize\n obj:";
    if (cs.members.empty()) os << " 0 x0";
    for (std::size_t j = 0; j < cs.members.size(); ++j) {
        Rat c = gamma.coeff(g, cs.members[j]);
        os << " + " << rat_str(c) << " x" << j;
    }
    os << "\nSubject To\n";
    for (int i = 0; i < g.n; ++i)
        for (int jj = i + 1; jj < g.n; ++jj) {
            if (!g.edge(i, jj)) continue;
            std::vector<std::size_t> support;
            for (std::size_t j = 0; j < cs.members.size(); ++j) {
                std::uint64_t need = (std::uint64_t{1} << i) | (std::uint64_t{1} << jj);
                if ((cs.members[j] & need) == need) support.push_back(j);
            }
            if (support.empty()) continue;
            os << " e_" << i << "_" << jj << ":";
            for (std::size_t j : support) os << " + x" << j;
            os << " <= 1\n";
        }
    os << "Bounds\n";
    for (std::size_t j = 0; j < cs.members.size(); ++j) os << " x" << j << " >= 0\n";
    os << "End\n";
    return os.str();
}

}  // namespace cpbp
