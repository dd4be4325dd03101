#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include "cpbp/graph.hpp"

namespace cpbp {

/// Isomorphism-invariant byte string: vertex count followed by the packed
/// upper triangle of the canonically relabeled adjacency matrix.
struct CanonicalForm {
    int n = 0;
    std::string bytes;

    auto operator<=>(const CanonicalForm&) const = default;
};

namespace detail {

// Ordered partition of the vertex set; refinement keeps it equitable.
using Cells = std::vector<std::vector<int>>;

inline void equitable_refine(const Graph& g, Cells& cells) {
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<std::uint64_t> cell_mask(cells.size(), 0);
        for (size_t c = 0; c < cells.size(); ++c)
            for (int v : cells[c]) cell_mask[c] |= std::uint64_t{1} << v;

        for (size_t c = 0; c < cells.size() && !changed; ++c) {
            if (cells[c].size() <= 1) continue;
            // key(v): neighbor counts into every cell, in cell order
            std::vector<std::pair<std::vector<int>, int>> keyed;
            keyed.reserve(cells[c].size());
            for (int v : cells[c]) {
                std::vector<int> key(cells.size());
                for (size_t d = 0; d < cells.size(); ++d)
                    key[d] = std::popcount(g.adj[v] & cell_mask[d]);
                keyed.emplace_back(std::move(key), v);
            }
            std::sort(keyed.begin(), keyed.end());
            bool split = false;
            for (size_t i = 1; i < keyed.size(); ++i)
                if (keyed[i].first != keyed[i - 1].first) split = true;
            if (!split) continue;

            Cells replacement;
            std::vector<int> cur{keyed[0].second};
            for (size_t i = 1; i < keyed.size(); ++i) {
                if (keyed[i].first != keyed[i - 1].first) {
                    replacement.push_back(std::move(cur));
                    cur.clear();
                }
                cur.push_back(keyed[i].second);
            }
            replacement.push_back(std::move(cur));

            Cells next;
            next.reserve(cells.size() + replacement.size() - 1);
            for (size_t d = 0; d < cells.size(); ++d) {
                if (d == c)
                    for (auto& part : replacement) next.push_back(std::move(part));
                else
                    next.push_back(std::move(cells[d]));
            }
            cells = std::move(next);
            changed = true;
        }
        // vertices within a cell kept sorted so branch order is reproducible
        for (auto& cell : cells) std::sort(cell.begin(), cell.end());
    }
}

inline std::string pack_adjacency(const Graph& g, const std::vector<int>& order) {
    // inverse: position of each vertex in the candidate labeling
    std::vector<int> pos(g.n);
    for (int p = 0; p < g.n; ++p) pos[order[p]] = p;
    int bits = g.n * (g.n - 1) / 2;
    std::string out((bits + 7) / 8, '\0');
    int idx = 0;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) {
            if (g.edge(order[i], order[j])) out[idx / 8] |= char(0x80u >> (idx % 8));
            ++idx;
        }
    return out;
}

struct CanonSearch {
    const Graph& g;
    std::string best;
    bool have_best = false;

    void run(Cells cells) {
        equitable_refine(g, cells);
        size_t target = cells.size();
        for (size_t c = 0; c < cells.size(); ++c)
            if (cells[c].size() > 1) {
                target = c;
                break;
            }
        if (target == cells.size()) {
            std::vector<int> order;
            order.reserve(g.n);
            for (auto& cell : cells) order.push_back(cell[0]);
            std::string candidate = pack_adjacency(g, order);
            if (!have_best || candidate < best) {
                best = std::move(candidate);
                have_best = true;
            }
            return;
        }
        // Homogeneous cell: internally complete or empty with identical rows
        // outside the cell. Every within-cell permutation is then an
        // automorphism, so a single branch covers the whole orbit.
        {
            const auto& cell = cells[target];
            std::uint64_t cell_mask = 0;
            for (int v : cell) cell_mask |= std::uint64_t{1} << v;
            bool homogeneous = true;
            std::uint64_t outside0 = g.adj[cell[0]] & ~cell_mask;
            for (std::size_t i = 0; i < cell.size() && homogeneous; ++i) {
                std::uint64_t inside = g.adj[cell[i]] & cell_mask;
                std::uint64_t want_full = cell_mask & ~(std::uint64_t{1} << cell[i]);
                if (inside != 0 && inside != want_full) homogeneous = false;
                if ((g.adj[cell[i]] & ~cell_mask) != outside0) homogeneous = false;
                if (i > 0 && ((g.adj[cell[i]] & cell_mask) != 0) !=
                                 ((g.adj[cell[0]] & cell_mask) != 0))
                    homogeneous = false;
            }
            if (homogeneous && cell.size() > 1) {
                Cells branched;
                branched.reserve(cells.size() + 1);
                for (std::size_t c = 0; c < cells.size(); ++c) {
                    if (c == target) {
                        branched.push_back({cell[0]});
                        branched.push_back(
                            std::vector<int>(cell.begin() + 1, cell.end()));
                    } else {
                        branched.push_back(cells[c]);
                    }
                }
                run(std::move(branched));
                return;
            }
        }
        for (int v : cells[target]) {
            Cells branched;
            branched.reserve(cells.size() + 1);
            for (size_t c = 0; c < cells.size(); ++c) {
                if (c == target) {
                    branched.push_back({v});
                    std::vector<int> rest;
                    for (int u : cells[c])
                        if (u != v) rest.push_back(u);
                    branched.push_back(std::move(rest));
                } else {
                    branched.push_back(cells[c]);
                }
            }
            run(std::move(branched));
        }
    }
};

}  // namespace detail

inline CanonicalForm canonical_form(const Graph& g) {
    CanonicalForm cf;
    cf.n = g.n;
    cf.bytes.push_back(char(g.n));
    if (g.n <= 1) return cf;
    detail::CanonSearch search{g};
    std::vector<int> all(g.n);
    for (int i = 0; i < g.n; ++i) all[i] = i;
    search.run({all});
    cf.bytes += search.best;
    return cf;
}

/// Rebuilds the canonically labeled graph from its byte form.
inline Graph from_canonical(const CanonicalForm& cf) {
    Graph g(cf.n);
    int idx = 0;
    for (int i = 0; i < cf.n; ++i)
        for (int j = i + 1; j < cf.n; ++j) {
            if (cf.bytes[1 + idx / 8] & char(0x80u >> (idx % 8))) g.add_edge(i, j);
            ++idx;
        }
    return g;
}

inline bool isomorphic(const Graph& a, const Graph& b) {
    if (a.n != b.n || a.edge_count() != b.edge_count()) return false;
    return canonical_form(a) == canonical_form(b);
}

}  // namespace cpbp
