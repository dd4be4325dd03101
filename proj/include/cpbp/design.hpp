#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "cpbp/graph.hpp"
#include "cpbp/parallel.hpp"
#include "cpbp/rational.hpp"

namespace cpbp {

/// Family S_0..S_{n-1} of m-subsets of [d] with pairwise intersections of
/// size at most t. The universe is laid out as consecutive residue blocks,
/// one block per prime, ordered by ascending prime.
struct Design {
    int n = 0;
    int d = 0;
    int t = 0;
    int m = 0;
    std::vector<int> primes;
    std::vector<std::vector<int>> sets;        // sorted element lists
    std::vector<std::vector<std::uint64_t>> masks;  // bitset view, ceil(d/64) words each
    bool size_bound_breached = false;          // d exceeded 2*m*n^(1/(t+1))

    void rebuild_masks() {
        int words = (d + 63) / 64;
        masks.assign(n, std::vector<std::uint64_t>(words, 0));
        for (int i = 0; i < n; ++i)
            for (int e : sets[i]) masks[i][e / 64] |= std::uint64_t{1} << (e % 64);
    }
};

struct DesignReport {
    bool pass = false;
    int max_intersection = 0;
    int min_set_size = 0;
    int max_set_size = 0;
};

namespace detail {

inline bool is_prime(long p) {
    if (p < 2) return false;
    for (long q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

/// Smallest integer B with B^(t+1) >= n.
inline long integer_root_ceiling(long n, int t_plus_1) {
    long b = 1;
    while (true) {
        mpz_class pow;
        mpz_ui_pow_ui(pow.get_mpz_t(), static_cast<unsigned long>(b),
                      static_cast<unsigned long>(t_plus_1));
        if (pow >= n) return b;
        ++b;
    }
}

}  // namespace detail

/// Residue construction: set i takes element i mod p_k from block k, with the
/// m smallest primes at or above ceil(n^(1/(t+1))). Any t+1 shared elements
/// would force a product of t+1 primes to divide i - j, which is impossible
/// below n. The d <= 2*m*n^(1/(t+1)) size guarantee is asymptotic, so it is
/// checked a posteriori and reported via size_bound_breached.
inline Design build_design(int n, int t, int m) {
    if (n < 2) throw std::invalid_argument("build_design: need n >= 2");
    if (t < 1) throw std::invalid_argument("build_design: need t >= 1");
    if (m < 0) throw std::invalid_argument("build_design: need m >= 0");
    Design dsn;
    dsn.n = n;
    dsn.t = t;
    dsn.m = m;
    if (m == 0) {
        dsn.sets.assign(n, {});
        dsn.rebuild_masks();
        return dsn;
    }
    long base = detail::integer_root_ceiling(n, t + 1);
    long ceiling = 16L * m * base;
    for (long p = base; static_cast<int>(dsn.primes.size()) < m; ++p) {
        if (p > ceiling)
            throw capacity_error("build_design: fewer than " + std::to_string(m) +
                                 " primes below search ceiling " + std::to_string(ceiling));
        if (detail::is_prime(p)) dsn.primes.push_back(static_cast<int>(p));
    }
    long total = 0;
    for (int p : dsn.primes) total += p;
    dsn.d = static_cast<int>(total);

    dsn.sets.assign(n, {});
    for (int i = 0; i < n; ++i) {
        int offset = 0;
        for (int p : dsn.primes) {
            dsn.sets[i].push_back(offset + i % p);
            offset += p;
        }
    }
    dsn.rebuild_masks();

    // d <= 2*m*n^(1/(t+1))  <=>  d^(t+1) <= (2m)^(t+1) * n
    mpz_class lhs, rhs;
    mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(dsn.d),
                  static_cast<unsigned long>(t + 1));
    mpz_ui_pow_ui(rhs.get_mpz_t(), static_cast<unsigned long>(2 * m),
                  static_cast<unsigned long>(t + 1));
    rhs *= n;
    dsn.size_bound_breached = lhs > rhs;
    return dsn;
}

/// Brute-force pairwise check against the stored (t, m). The pair loop is
/// split across workers; the reduce is a max so the result is deterministic.
inline DesignReport verify_design(const Design& dsn, int workers = 1) {
    DesignReport rep;
    rep.min_set_size = dsn.n > 0 ? static_cast<int>(dsn.sets[0].size()) : 0;
    rep.max_set_size = rep.min_set_size;
    for (const auto& s : dsn.sets) {
        int sz = static_cast<int>(s.size());
        rep.min_set_size = std::min(rep.min_set_size, sz);
        rep.max_set_size = std::max(rep.max_set_size, sz);
    }
    int words = dsn.masks.empty() ? 0 : static_cast<int>(dsn.masks[0].size());
    std::vector<int> row_max(dsn.n, 0);
    parallel_for(static_cast<std::size_t>(dsn.n), workers, [&](std::size_t i) {
        int local = 0;
        for (int j = static_cast<int>(i) + 1; j < dsn.n; ++j) {
            int inter = 0;
            for (int w = 0; w < words; ++w)
                inter += std::popcount(dsn.masks[i][w] & dsn.masks[j][w]);
            local = std::max(local, inter);
        }
        row_max[i] = local;
    });
    for (int v : row_max) rep.max_intersection = std::max(rep.max_intersection, v);
    rep.pass = rep.max_intersection <= dsn.t && rep.min_set_size == dsn.m &&
               rep.max_set_size == dsn.m;
    return rep;
}

/// Least d with binom(d, t+1) >= n * binom(m, t+1).
inline long universe_lower_bound(long n, int t, int m) {
    if (m < t + 1) throw std::invalid_argument("universe_lower_bound: need m >= t+1");
    mpz_class target = binom(static_cast<unsigned long>(m), static_cast<unsigned long>(t + 1));
    target *= n;
    long d = t + 1;
    while (binom(static_cast<unsigned long>(d), static_cast<unsigned long>(t + 1)) < target) ++d;
    return d;
}

/// Counting-bound sanity companion: (1/e) * n^(1/(t+1)) * m, as a rational
/// floor via (floor of n^(1/(t+1)))/e with e rounded up to 2.71828183.
inline Rat universe_sanity_companion(long n, int t, int m) {
    long root = detail::integer_root_ceiling(n, t + 1);
    // root is the ceiling; the true n^(1/(t+1)) lies in (root-1, root]
    Rat e_upper = parse_rat("2.71828183");
    return Rat(root - 1) * m / e_upper;
}

inline nlohmann::json design_to_json(const Design& dsn) {
    nlohmann::json j;
    j["n"] = dsn.n;
    j["d"] = dsn.d;
    j["t"] = dsn.t;
    j["m"] = dsn.m;
    j["primes"] = dsn.primes;
    j["sets"] = dsn.sets;
    j["size_bound_breached"] = dsn.size_bound_breached;
    return j;
}

inline Design design_from_json(const nlohmann::json& j) {
    Design dsn;
    dsn.n = j.at("n").get<int>();
    dsn.d = j.at("d").get<int>();
    dsn.t = j.at("t").get<int>();
    dsn.m = j.at("m").get<int>();
    dsn.primes = j.at("primes").get<std::vector<int>>();
    dsn.sets = j.at("sets").get<std::vector<std::vector<int>>>();
    if (j.contains("size_bound_breached")) dsn.size_bound_breached = j["size_bound_breached"];
    dsn.rebuild_masks();
    return dsn;
}

}  // namespace cpbp
