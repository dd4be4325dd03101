#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "cpbp/graph.hpp"

namespace cpbp {

/// Cliques (vertex masks of the host) covering each host edge exactly once.
struct CliquePartition {
    std::vector<std::uint64_t> cliques;
};

struct PartitionCheck {
    bool pass = false;
    int size = 0;
    std::string reason;
};

inline PartitionCheck verify_partition(const Graph& g, const CliquePartition& p) {
    PartitionCheck out;
    out.size = static_cast<int>(p.cliques.size());
    std::vector<std::vector<int>> mult(g.n, std::vector<int>(g.n, 0));
    for (auto mask : p.cliques) {
        if (std::popcount(mask) < 2) {
            out.reason = "clique of size < 2";
            return out;
        }
        if (mask & ~g.vertex_mask()) {
            out.reason = "vertex out of range";
            return out;
        }
        if (!is_clique(g, mask)) {
            out.reason = "listed set is not a clique of the host";
            return out;
        }
        auto vs = mask_to_vertices(mask);
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b) ++mult[vs[a]][vs[b]];
    }
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) {
            int want = g.edge(i, j) ? 1 : 0;
            if (mult[i][j] != want) {
                out.reason = "edge {" + std::to_string(i) + "," + std::to_string(j) +
                             "} covered " + std::to_string(mult[i][j]) + " times";
                return out;
            }
        }
    out.pass = true;
    return out;
}

namespace detail {

struct CpInstance {
    const Graph& g;
    int max_clique_size;               // 0 = unrestricted
    std::vector<std::pair<int, int>> edges;  // lexicographic
    std::vector<std::vector<int>> edge_id;   // (i,j) -> index
    int best;
    std::vector<std::uint64_t> best_partition;
    std::vector<std::uint64_t> current;

    explicit CpInstance(const Graph& graph, int cap)
        : g(graph), max_clique_size(cap), edge_id(graph.n, std::vector<int>(graph.n, -1)) {
        for (int i = 0; i < g.n; ++i)
            for (int j = i + 1; j < g.n; ++j)
                if (g.edge(i, j)) {
                    edge_id[i][j] = edge_id[j][i] = static_cast<int>(edges.size());
                    edges.emplace_back(i, j);
                }
        best = static_cast<int>(edges.size()) + 1;
    }

    std::uint64_t full_mask() const {
        int e = static_cast<int>(edges.size());
        return e == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << e) - 1);
    }

    std::uint64_t clique_edges(std::uint64_t vmask) const {
        std::uint64_t em = 0;
        auto vs = mask_to_vertices(vmask);
        for (std::size_t a = 0; a < vs.size(); ++a)
            for (std::size_t b = a + 1; b < vs.size(); ++b)
                em |= std::uint64_t{1} << edge_id[vs[a]][vs[b]];
        return em;
    }

    // Adjacency restricted to uncovered edges.
    std::vector<std::uint64_t> uncovered_adj(std::uint64_t covered) const {
        std::vector<std::uint64_t> adj(g.n, 0);
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (!(covered & (std::uint64_t{1} << e))) {
                auto [i, j] = edges[e];
                adj[i] |= std::uint64_t{1} << j;
                adj[j] |= std::uint64_t{1} << i;
            }
        return adj;
    }

    // All cliques (vertex masks) containing both endpoints of the seed edge,
    // every pairwise edge uncovered, sizes up to the cap. Seeds the branch
    // list; larger cliques first so good incumbents surface early.
    void cliques_through(const std::vector<std::uint64_t>& adj, int i, int j,
                         std::vector<std::uint64_t>& out) const {
        std::uint64_t base = (std::uint64_t{1} << i) | (std::uint64_t{1} << j);
        struct Item {
            std::uint64_t clique;
            std::uint64_t cands;
            int last;
            int size;
        };
        std::vector<Item> stack{{base, adj[i] & adj[j], j, 2}};
        while (!stack.empty()) {
            Item it = stack.back();
            stack.pop_back();
            out.push_back(it.clique);
            if (max_clique_size && it.size >= max_clique_size) continue;
            std::uint64_t c = it.cands;
            while (c) {
                int v = std::countr_zero(c);
                c &= c - 1;
                if (v <= it.last) continue;
                stack.push_back({it.clique | (std::uint64_t{1} << v), it.cands & adj[v], v,
                                 it.size + 1});
            }
        }
        std::sort(out.begin(), out.end(), [](std::uint64_t a, std::uint64_t b) {
            int pa = std::popcount(a), pb = std::popcount(b);
            return pa != pb ? pa > pb : a < b;
        });
    }

    // Largest clique size present in the uncovered graph is at most
    // 2 + max over uncovered edges of |common uncovered neighborhood|.
    int clique_size_upper_bound(const std::vector<std::uint64_t>& adj,
                                std::uint64_t covered) const {
        int ub = 2;
        for (std::size_t e = 0; e < edges.size(); ++e)
            if (!(covered & (std::uint64_t{1} << e))) {
                auto [i, j] = edges[e];
                ub = std::max(ub, 2 + std::popcount(adj[i] & adj[j]));
            }
        if (max_clique_size) ub = std::min(ub, max_clique_size);
        return ub;
    }

    // Counting bound via an independent set I of the uncovered graph: every
    // clique meets I in at most one vertex, and a clique covering s edges
    // into its I-vertex covers at least s-1 edges outside I. Hence at least
    // cross(I) - outside(I) cliques are still needed.
    int independent_set_bound(const std::vector<std::uint64_t>& adj) const {
        std::uint64_t active = 0;
        for (int v = 0; v < g.n; ++v)
            if (adj[v]) active |= std::uint64_t{1} << v;
        std::uint64_t rest = active, iset = 0;
        while (rest) {
            int pick = -1, pick_deg = g.n + 1;
            std::uint64_t m = rest;
            while (m) {
                int v = std::countr_zero(m);
                m &= m - 1;
                int deg = std::popcount(adj[v] & rest);
                if (deg < pick_deg) {
                    pick = v;
                    pick_deg = deg;
                }
            }
            iset |= std::uint64_t{1} << pick;
            rest &= ~(adj[pick] | (std::uint64_t{1} << pick));
        }
        int cross = 0, outside = 0;
        for (int v = 0; v < g.n; ++v) {
            if (!adj[v]) continue;
            if (iset & (std::uint64_t{1} << v))
                cross += std::popcount(adj[v]);
            else
                outside += std::popcount(adj[v] & ~iset);
        }
        outside /= 2;  // counted from both endpoints
        return cross - outside;
    }

    void dfs(std::uint64_t covered, int used) {
        if (covered == full_mask()) {
            if (used < best) {
                best = used;
                best_partition = current;
            }
            return;
        }
        if (used + 1 >= best) return;
        int remaining = static_cast<int>(edges.size()) - std::popcount(covered);
        auto adj = uncovered_adj(covered);
        int ub = clique_size_upper_bound(adj, covered);
        int per = ub * (ub - 1) / 2;
        int lb_ratio = used + (remaining + per - 1) / per;
        if (lb_ratio >= best) return;
        int lb_iset = used + independent_set_bound(adj);
        if (lb_iset >= best) return;

        int first = std::countr_zero(~covered & full_mask());
        auto [i, j] = edges[first];
        std::vector<std::uint64_t> branches;
        cliques_through(adj, i, j, branches);
        for (auto vmask : branches) {
            std::uint64_t em = clique_edges(vmask);
            current.push_back(vmask);
            dfs(covered | em, used + 1);
            current.pop_back();
        }
    }
};

}  // namespace detail

/// Exact minimum clique partition size by branch and bound over the
/// lexicographically first uncovered edge. max_clique_size restricts the
/// allowed clique sizes (0 = unrestricted). The edge guardrail protects
/// against runaway instances; callers may raise it deliberately.
inline int cp_bruteforce(const Graph& g, int max_clique_size = 0, int max_edges = 30) {
    int e = g.edge_count();
    if (e > max_edges)
        throw capacity_error("cp_bruteforce: " + std::to_string(e) + " edges exceeds guardrail " +
                             std::to_string(max_edges));
    if (e == 0) return 0;
    if (e > 64) throw capacity_error("cp_bruteforce: more than 64 edges unsupported");
    detail::CpInstance inst(g, max_clique_size);
    inst.dfs(0, 0);
    return inst.best;
}

/// Same search, returning a witness partition.
inline CliquePartition cp_bruteforce_witness(const Graph& g, int max_clique_size = 0,
                                             int max_edges = 30) {
    int e = g.edge_count();
    if (e > max_edges)
        throw capacity_error("cp_bruteforce: " + std::to_string(e) + " edges exceeds guardrail " +
                             std::to_string(max_edges));
    CliquePartition p;
    if (e == 0) return p;
    detail::CpInstance inst(g, max_clique_size);
    inst.dfs(0, 0);
    p.cliques = inst.best_partition;
    return p;
}

/// Proper edge coloring from the round-robin schedule of K_n restricted to
/// E(g): at most n-1 colors for even n, n for odd n.
struct EdgeColoring {
    std::map<std::pair<int, int>, int> color;  // keys (i, j) with i < j
    int colors_used = 0;
};

inline EdgeColoring edge_coloring(const Graph& g) {
    EdgeColoring ec;
    if (g.n < 2) return ec;
    int m = g.n;
    int teams = (m % 2 == 0) ? m : m + 1;  // odd m plays with a bye slot
    int rounds = teams - 1;
    std::vector<bool> used(rounds, false);
    for (int r = 0; r < rounds; ++r) {
        auto play = [&](int a, int b) {
            if (a >= m || b >= m) return;  // bye
            if (a > b) std::swap(a, b);
            if (!g.edge(a, b)) return;
            ec.color[{a, b}] = r;
            used[r] = true;
        };
        play(teams - 1, r);
        for (int i = 1; i <= teams / 2 - 1; ++i) {
            int a = (r + i) % (teams - 1);
            int b = (r - i + 2 * (teams - 1)) % (teams - 1);
            play(a, b);
        }
    }
    for (bool u : used)
        if (u) ++ec.colors_used;
    return ec;
}

/// g joined with an independent set of size extra: all cross edges added.
inline Graph join_with_independent(const Graph& g, int extra) {
    if (g.n + extra > kMaxVertices) throw capacity_error("join exceeds 64 vertices");
    Graph h(g.n + extra);
    for (int i = 0; i < g.n; ++i) h.adj[i] = g.adj[i];
    for (int v = g.n; v < h.n; ++v)
        for (int i = 0; i < g.n; ++i) h.add_edge(v, i);
    return h;
}

/// Constructive partition of g joined with an empty graph on l vertices:
/// one triangle per colored edge through the color's assigned new vertex,
/// remaining join edges as single edges. Size is exactly n*l - e(g).
inline CliquePartition join_partition(const Graph& g, int l) {
    EdgeColoring ec = edge_coloring(g);
    if (ec.colors_used > l)
        throw std::invalid_argument("join_partition: edge coloring needs " +
                                    std::to_string(ec.colors_used) + " colors but l = " +
                                    std::to_string(l));
    // distinct colors in increasing order get the new vertices n, n+1, ...
    std::map<int, int> color_vertex;
    for (auto& [edge, c] : ec.color)
        if (!color_vertex.contains(c)) {
            int next = g.n + static_cast<int>(color_vertex.size());
            color_vertex[c] = next;
        }
    CliquePartition p;
    std::vector<std::vector<bool>> join_used(g.n, std::vector<bool>(l, false));
    for (auto& [edge, c] : ec.color) {
        auto [x, y] = edge;
        int v = color_vertex[c];
        p.cliques.push_back((std::uint64_t{1} << x) | (std::uint64_t{1} << y) |
                            (std::uint64_t{1} << v));
        join_used[x][v - g.n] = true;
        join_used[y][v - g.n] = true;
    }
    for (int x = 0; x < g.n; ++x)
        for (int t = 0; t < l; ++t)
            if (!join_used[x][t])
                p.cliques.push_back((std::uint64_t{1} << x) | (std::uint64_t{1} << (g.n + t)));
    return p;
}

inline nlohmann::json partition_to_json(const CliquePartition& p) {
    nlohmann::json arr = nlohmann::json::array();
    for (auto mask : p.cliques) arr.push_back(mask_to_vertices(mask));
    return arr;
}

inline CliquePartition partition_from_json(const nlohmann::json& j) {
    CliquePartition p;
    for (const auto& lst : j) p.cliques.push_back(vertices_to_mask(lst.get<std::vector<int>>()));
    return p;
}

}  // namespace cpbp
