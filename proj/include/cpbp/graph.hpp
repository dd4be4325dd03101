#pragma once

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cpbp {

class capacity_error : public std::runtime_error {
public:
    explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

constexpr int kMaxVertices = 64;

/// Undirected simple graph on at most 64 vertices, one adjacency word per
/// vertex. Immutable in spirit: operations build new graphs.
struct Graph {
    int n = 0;
    std::vector<std::uint64_t> adj;  // bit j of adj[i] set iff {i,j} is an edge

    Graph() = default;
    explicit Graph(int vertices) : n(vertices), adj(vertices, 0) {
        if (vertices < 0 || vertices > kMaxVertices)
            throw capacity_error("graph size out of range [0,64]: " + std::to_string(vertices));
    }

    bool edge(int i, int j) const { return (adj[i] >> j) & 1u; }

    void add_edge(int i, int j) {
        if (i == j) throw std::invalid_argument("loop edge");
        adj[i] |= std::uint64_t{1} << j;
        adj[j] |= std::uint64_t{1} << i;
    }

    void remove_edge(int i, int j) {
        adj[i] &= ~(std::uint64_t{1} << j);
        adj[j] &= ~(std::uint64_t{1} << i);
    }

    int degree(int i) const { return std::popcount(adj[i]); }

    int edge_count() const {
        int twice = 0;
        for (int i = 0; i < n; ++i) twice += degree(i);
        return twice / 2;
    }

    std::uint64_t vertex_mask() const {
        return n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
    }

    bool operator==(const Graph&) const = default;

    /// Symmetry and loop-freeness; decode paths call this on untrusted input.
    bool valid() const {
        std::uint64_t allowed = vertex_mask();
        for (int i = 0; i < n; ++i) {
            if (adj[i] & ~allowed) return false;
            if (edge(i, i)) return false;
            for (int j = i + 1; j < n; ++j)
                if (edge(i, j) != edge(j, i)) return false;
        }
        return true;
    }
};

inline Graph complement(const Graph& g) {
    Graph h(g.n);
    std::uint64_t all = g.vertex_mask();
    for (int i = 0; i < g.n; ++i)
        h.adj[i] = (~g.adj[i] & all) & ~(std::uint64_t{1} << i);
    return h;
}

/// Image of g under perm: vertex i becomes perm[i].
inline Graph relabel(const Graph& g, const std::vector<int>& perm) {
    Graph h(g.n);
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.edge(i, j)) h.add_edge(perm[i], perm[j]);
    return h;
}

inline Graph complete_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
    return g;
}

inline Graph cycle_graph(int n) {
    Graph g(n);
    for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
    return g;
}

inline Graph path_graph(int n) {
    Graph g(n);
    for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
    return g;
}

/// All vertex subsets of size 3..max_size inducing complete subgraphs.
struct CliqueSet {
    std::vector<std::uint64_t> members;
    int min_size = 3;
    int max_size = 3;
};

namespace detail {
inline void extend_cliques(const Graph& g, std::uint64_t clique, int size, int last,
                           std::uint64_t cands, int max_size, std::vector<std::uint64_t>& out) {
    if (size >= 3) out.push_back(clique);
    if (size == max_size) return;
    std::uint64_t c = cands;
    while (c) {
        int v = std::countr_zero(c);
        c &= c - 1;
        if (v <= last) continue;
        extend_cliques(g, clique | (std::uint64_t{1} << v), size + 1, v,
                       cands & g.adj[v], max_size, out);
    }
}
}  // namespace detail

inline CliqueSet enumerate_cliques(const Graph& g, int r) {
    if (r < 3) throw std::invalid_argument("clique size bound must be at least 3");
    CliqueSet cs;
    cs.max_size = r < g.n ? r : g.n;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.edge(i, j))
                detail::extend_cliques(g, (std::uint64_t{1} << i) | (std::uint64_t{1} << j), 2,
                                       j, g.adj[i] & g.adj[j], cs.max_size, cs.members);
    return cs;
}

inline bool is_clique(const Graph& g, std::uint64_t mask) {
    std::uint64_t m = mask;
    while (m) {
        int v = std::countr_zero(m);
        m &= m - 1;
        if ((g.adj[v] & mask) != (mask & ~(std::uint64_t{1} << v))) return false;
    }
    return true;
}

inline std::vector<int> mask_to_vertices(std::uint64_t mask) {
    std::vector<int> vs;
    while (mask) {
        vs.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return vs;
}

inline std::uint64_t vertices_to_mask(const std::vector<int>& vs) {
    std::uint64_t m = 0;
    for (int v : vs) m |= std::uint64_t{1} << v;
    return m;
}

}  // namespace cpbp
