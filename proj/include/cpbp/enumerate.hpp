#pragma once

#include <map>
#include <vector>

#include "cpbp/canonical.hpp"
#include "cpbp/graph.hpp"

namespace cpbp {

/// Appends a new vertex with every possible neighborhood and deduplicates up
/// to isomorphism. Returned graphs are canonical representatives, sorted by
/// canonical bytes.
inline std::vector<Graph> one_vertex_extensions(const Graph& g) {
    if (g.n >= kMaxVertices) throw capacity_error("cannot extend a 64-vertex graph");
    std::map<CanonicalForm, Graph> seen;
    std::uint64_t limit = std::uint64_t{1} << g.n;
    for (std::uint64_t nbhd = 0; nbhd < limit; ++nbhd) {
        Graph h(g.n + 1);
        for (int i = 0; i < g.n; ++i) h.adj[i] = g.adj[i];
        h.adj[g.n] = nbhd;
        std::uint64_t m = nbhd;
        while (m) {
            int v = std::countr_zero(m);
            m &= m - 1;
            h.adj[v] |= std::uint64_t{1} << g.n;
        }
        CanonicalForm cf = canonical_form(h);
        if (!seen.contains(cf)) seen.emplace(std::move(cf), from_canonical(cf));
    }
    std::vector<Graph> out;
    out.reserve(seen.size());
    for (auto& [cf, graph] : seen) out.push_back(std::move(graph));
    return out;
}

/// One representative per isomorphism class on n vertices, grown by iterated
/// one-vertex extension from the single vertex. Deterministic order (sorted
/// canonical bytes at the final level).
inline std::vector<Graph> enumerate_graphs(int n) {
    if (n < 1) throw std::invalid_argument("enumerate_graphs: need n >= 1");
    if (n > 8)
        throw capacity_error("enumerate_graphs capped at n = 8; larger sets are reached "
                             "through one_vertex_extensions");
    std::vector<Graph> level{Graph(1)};
    for (int k = 1; k < n; ++k) {
        std::map<CanonicalForm, Graph> next;
        for (const Graph& g : level)
            for (Graph& h : one_vertex_extensions(g)) {
                CanonicalForm cf = canonical_form(h);
                if (!next.contains(cf)) next.emplace(std::move(cf), std::move(h));
            }
        level.clear();
        level.reserve(next.size());
        for (auto& [cf, graph] : next) level.push_back(std::move(graph));
    }
    return level;
}

}  // namespace cpbp
