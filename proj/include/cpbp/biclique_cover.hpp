#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "cpbp/design.hpp"

namespace cpbp {

enum class CoverStage { design, list12, padding, star };

inline const char* stage_name(CoverStage s) {
    switch (s) {
        case CoverStage::design: return "design";
        case CoverStage::list12: return "list12";
        case CoverStage::padding: return "padding";
        case CoverStage::star: return "star";
    }
    return "?";
}

struct Biclique {
    std::vector<int> left;
    std::vector<int> right;
    CoverStage stage = CoverStage::star;
};

struct BicliqueCover {
    int n = 0;  // host K_n
    std::vector<Biclique> bicliques;
    bool design_size_bound_breached = false;
};

struct CoverageReport {
    bool pass = false;
    std::map<int, long> histogram;                     // multiplicity -> #edges
    std::vector<std::tuple<int, int, int>> offending;  // (i, j, count) outside target
    std::size_t size = 0;
};

namespace detail {

// Dense multiplicity counts over the upper triangle.
class EdgeCounts {
public:
    explicit EdgeCounts(int n) : n_(n), counts_(std::size_t(n) * (n - 1) / 2, 0) {}
    int& at(int i, int j) {
        if (i > j) std::swap(i, j);
        return counts_[std::size_t(j) * (j - 1) / 2 + i];
    }
    int n() const { return n_; }

private:
    int n_;
    std::vector<int> counts_;
};

inline void accumulate(EdgeCounts& counts, const BicliqueCover& cover) {
    for (const auto& b : cover.bicliques)
        for (int u : b.left)
            for (int v : b.right) ++counts.at(u, v);
}

}  // namespace detail

/// The star partition K_{1,n-1}, ..., K_{1,1}: biclique i has left {i} and
/// right {0..i-1}; every edge covered exactly once.
inline BicliqueCover graham_pollak_cover(int n) {
    if (n < 2) throw std::invalid_argument("graham_pollak_cover: need n >= 2");
    BicliqueCover cover;
    cover.n = n;
    for (int i = 1; i < n; ++i) {
        Biclique b;
        b.left = {i};
        b.right.resize(i);
        for (int j = 0; j < i; ++j) b.right[j] = j;
        b.stage = CoverStage::star;
        cover.bicliques.push_back(std::move(b));
    }
    return cover;
}

/// {1,2}-covering of the clique on the given vertices: arrange them in a
/// q x q grid (q = ceil(sqrt(count)), row-major) and emit row-versus-later-rows
/// and column-versus-later-columns bicliques. Same-row and same-column pairs
/// are covered once, all other pairs twice. At most 2(q-1) bicliques.
inline BicliqueCover alon_12_cover(const std::vector<int>& vertices, int host_n = 0) {
    if (vertices.empty()) throw std::invalid_argument("alon_12_cover: empty vertex set");
    BicliqueCover cover;
    cover.n = host_n;
    for (int v : vertices) cover.n = std::max(cover.n, v + 1);
    std::size_t count = vertices.size();
    int q = 1;
    while (std::size_t(q) * q < count) ++q;
    auto row_of = [&](std::size_t idx) { return static_cast<int>(idx / q); };
    auto col_of = [&](std::size_t idx) { return static_cast<int>(idx % q); };

    for (int r = 0; r + 1 < q; ++r) {
        Biclique b;
        b.stage = CoverStage::list12;
        for (std::size_t idx = 0; idx < count; ++idx) {
            if (row_of(idx) == r) b.left.push_back(vertices[idx]);
            if (row_of(idx) > r) b.right.push_back(vertices[idx]);
        }
        if (!b.left.empty() && !b.right.empty()) cover.bicliques.push_back(std::move(b));
    }
    for (int c = 0; c + 1 < q; ++c) {
        Biclique b;
        b.stage = CoverStage::list12;
        for (std::size_t idx = 0; idx < count; ++idx) {
            if (col_of(idx) == c) b.left.push_back(vertices[idx]);
            if (col_of(idx) > c) b.right.push_back(vertices[idx]);
        }
        if (!b.left.empty() && !b.right.empty()) cover.bicliques.push_back(std::move(b));
    }
    return cover;
}

/// Exact k-covering of K_n, staged: design bicliques bring every edge to
/// multiplicity 2*floor(k/2) or 2*floor(k/2)-2, the {1,2}-coverings of the
/// residue cliques C_{l,r} top up triple-edges when k is odd, and per-vertex
/// stars pad every edge to exactly k.
inline BicliqueCover k_cover(int n, int k) {
    if (n < 2) throw std::invalid_argument("k_cover: need n >= 2");
    if (k < 1) throw std::invalid_argument("k_cover: need k >= 1");
    BicliqueCover cover;
    cover.n = n;
    detail::EdgeCounts counts(n);

    Design dsn = build_design(n, 1, k / 2);
    cover.design_size_bound_breached = dsn.size_bound_breached;

    // (1) one biclique per universe element: members versus non-members
    for (int e = 0; e < dsn.d; ++e) {
        Biclique b;
        b.stage = CoverStage::design;
        int word = e / 64, bit = e % 64;
        for (int j = 0; j < n; ++j) {
            if (dsn.masks[j][word] & (std::uint64_t{1} << bit))
                b.left.push_back(j);
            else
                b.right.push_back(j);
        }
        if (b.left.empty() || b.right.empty()) continue;
        for (int u : b.left)
            for (int v : b.right) ++counts.at(u, v);
        cover.bicliques.push_back(std::move(b));
    }

    // (2) odd k: bring each triple-edge up by one or two. A pair is a
    // triple-edge iff it shares a residue modulo exactly one design prime.
    if (k % 2 == 1) {
        for (std::size_t l = 0; l < dsn.primes.size(); ++l) {
            int p = dsn.primes[l];
            for (int r = 0; r < p; ++r) {
                std::vector<int> clique;
                for (int v = r; v < n; v += p) clique.push_back(v);
                if (clique.size() < 2) continue;
                BicliqueCover sub = alon_12_cover(clique, n);
                for (auto& b : sub.bicliques) {
                    for (int u : b.left)
                        for (int v : b.right) ++counts.at(u, v);
                    cover.bicliques.push_back(std::move(b));
                }
            }
        }
    }

    // (3) padding stars against the post-stage-2 deficiencies
    std::vector<std::vector<int>> star(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int deficiency = k - counts.at(i, j);
            if (deficiency < 0 || deficiency > 2)
                throw std::logic_error("k_cover: deficiency out of range after staging");
            if (deficiency >= 1) star[j].push_back(i);  // i < j covers the "one more" case
            if (deficiency == 2) star[i].push_back(j);
        }
    for (int i = 0; i < n; ++i) {
        if (star[i].empty()) continue;
        Biclique b;
        b.stage = CoverStage::padding;
        b.left = {i};
        b.right = std::move(star[i]);
        cover.bicliques.push_back(std::move(b));
    }
    return cover;
}

/// Exact per-edge multiplicity counts; pass iff every count lies in target.
inline CoverageReport verify_cover(const BicliqueCover& cover, const std::vector<int>& target) {
    CoverageReport rep;
    rep.size = cover.bicliques.size();
    detail::EdgeCounts counts(cover.n);
    detail::accumulate(counts, cover);
    rep.pass = true;
    for (int j = 1; j < cover.n; ++j)
        for (int i = 0; i < j; ++i) {
            int c = counts.at(i, j);
            ++rep.histogram[c];
            if (std::find(target.begin(), target.end(), c) == target.end()) {
                rep.pass = false;
                if (rep.offending.size() < 1000) rep.offending.emplace_back(i, j, c);
            }
        }
    return rep;
}

/// Size budget n + 2k n^{3/4} + k sqrt(n) of the staged construction.
inline double k_cover_size_budget(int n, int k) {
    return n + 2.0 * k * std::pow(n, 0.75) + k * std::sqrt(n);
}

inline nlohmann::json biclique_to_json(const Biclique& b) {
    return nlohmann::json{{"left", b.left}, {"right", b.right}, {"stage", stage_name(b.stage)}};
}

inline std::string cover_to_jsonl(const BicliqueCover& cover) {
    std::string out;
    for (const auto& b : cover.bicliques) {
        out += biclique_to_json(b).dump();
        out += "\n";
    }
    return out;
}

inline BicliqueCover cover_from_jsonl(const std::string& text, int n) {
    BicliqueCover cover;
    cover.n = n;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string::npos) end = text.size();
        std::string line = text.substr(pos, end - pos);
        pos = end + 1;
        if (line.empty()) continue;
        nlohmann::json j = nlohmann::json::parse(line);
        Biclique b;
        b.left = j.at("left").get<std::vector<int>>();
        b.right = j.at("right").get<std::vector<int>>();
        std::string st = j.value("stage", "star");
        if (st == "design") b.stage = CoverStage::design;
        else if (st == "list12") b.stage = CoverStage::list12;
        else if (st == "padding") b.stage = CoverStage::padding;
        else b.stage = CoverStage::star;
        cover.bicliques.push_back(std::move(b));
    }
    return cover;
}

}  // namespace cpbp
