// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Budgets are wall-clock seconds printed next to each result.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "cpbp/biclique_cover.hpp"
#include "cpbp/bounds.hpp"
#include "cpbp/design.hpp"
#include "cpbp/enumerate.hpp"
#include "cpbp/graph6.hpp"
#include "cpbp/h_graphs.hpp"
#include "cpbp/packing.hpp"
#include "cpbp/search.hpp"

using namespace cpbp;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

struct Criterion {
    std::string name;
    Clock::time_point start = Clock::now();
    bool ok = true;
    std::ostringstream detail;

    explicit Criterion(std::string n) : name(std::move(n)) {}

    void expect(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << "    failed: " << what << "\n";
        }
    }

    void expect_budget(double seconds) {
        double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
        expect(elapsed < seconds,
               "runtime " + std::to_string(elapsed) + "s within " + std::to_string(seconds) + "s");
    }

    void finish() {
        double secs = std::chrono::duration<double>(Clock::now() - start).count();
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(1);
        line << (ok ? "[PASS] " : "[FAIL] ") << name << " (" << secs << "s)";
        std::cout << line.str() << "\n" << detail.str();
        std::cout.flush();
        if (!ok) ++failures;
    }
};

int hardware_workers() {
    int w = default_workers();
    return w < 1 ? 1 : w;
}

void criterion1_kcover() {
    Criterion c("1. k-cover exactness and size budget, n in {50,100,225,400}, k in 1..6");
    for (int n : {50, 100, 225, 400}) {
        for (int k = 1; k <= 6; ++k) {
            auto cover = k_cover(n, k);
            auto rep = verify_cover(cover, {k});
            std::string tag = "n=" + std::to_string(n) + ",k=" + std::to_string(k);
            c.expect(rep.pass && rep.offending.empty(), tag + ": exact multiplicity");
            if (k == 1)
                c.expect(rep.size == std::size_t(n - 1), tag + ": star partition size n-1");
            if (!cover.design_size_bound_breached)
                c.expect(double(rep.size) <= k_cover_size_budget(n, k),
                         tag + ": size within n + 2k n^0.75 + k sqrt(n)");
        }
    }
    c.expect_budget(10.0);
    c.finish();
}

void criterion2_designs() {
    Criterion c("2. design correctness, n in {25,100,10000}, m in 1..5");
    int workers = hardware_workers();
    for (int n : {25, 100, 10000}) {
        for (int m = 1; m <= 5; ++m) {
            Design d = build_design(n, 1, m);
            auto rep = verify_design(d, workers);
            std::string tag = "n=" + std::to_string(n) + ",m=" + std::to_string(m);
            c.expect(rep.pass, tag + ": verify");
            c.expect(rep.max_intersection <= 1, tag + ": pairwise intersections at most 1");
            c.expect(Rat(d.d) >= universe_sanity_companion(n, 1, m),
                     tag + ": universe at least (1/e) n^(1/2) m");
        }
    }
    c.expect_budget(5.0);
    c.finish();
}

void criterion3_lp_ground_truth() {
    Criterion c("3. exhaustive LP minima: f(6)=2, f(7)=4, f(8)=6");
    int workers = hardware_workers();
    c.expect(f_exhaustive(6, 4, workers).value == Rat(2), "f(6) == 2");
    c.expect(f_exhaustive(7, 4, workers).value == Rat(4), "f(7) == 4");
    c.expect(f_exhaustive(8, 4, workers).value == Rat(6), "f(8) == 6");
    c.expect_budget(30 * 60.0);
    c.finish();
}

// Shared with criterion 10's transcript audit.
SearchResult table_run;

void criterion4_table() {
    Criterion c("4. extension search reproduces the published table, columns n=6..11");
    SearchOptions opt;
    opt.r = 4;
    opt.n0 = 6;
    opt.depth = 11;
    opt.n_max = 11;
    opt.workers = hardware_workers();
    table_run = run_search(opt);

    auto rats = [](std::initializer_list<const char*> xs) {
        std::vector<Rat> out;
        for (auto* s : xs) out.push_back(parse_rat(s));
        return out;
    };
    // column -> published order statistics (exact rationals)
    std::vector<std::pair<int, std::vector<Rat>>> expected;
    expected.emplace_back(6, rats({"2", "4", "5", "6", "7", "8", "25/3", "9", "32/3", "25/2"}));
    expected.emplace_back(7, rats({"4", "5", "6", "7", "8", "25/3", "17/2", "9", "19/2", "10",
                                   "31/3"}));
    expected.emplace_back(8, rats({"6", "7", "8", "9", "19/2", "10", "31/3", "21/2", "53/5",
                                   "32/3", "54/5"}));
    expected.emplace_back(9, rats({"8", "9", "10", "11", "12", "37/3", "25/2", "63/5", "38/3",
                                   "64/5", "13"}));
    expected.emplace_back(10, rats({"11", "12", "25/2", "13", "14", "29/2", "44/3", "74/5",
                                    "15", "31/2", "78/5"}));
    expected.emplace_back(11, rats({"15", "16", "33/2", "17", "35/2", "18", "73/4", "55/3",
                                    "37/2", "56/3", "75/4"}));

    c.expect(table_run.levels.size() == expected.size(), "six exact columns recorded");
    for (std::size_t i = 0; i < expected.size() && i < table_run.levels.size(); ++i) {
        const auto& rec = table_run.levels[i];
        const auto& [n, cells] = expected[i];
        std::string tag = "n=" + std::to_string(n);
        c.expect(rec.n == n, tag + ": column order");
        c.expect(rec.exact, tag + ": exact minima (full pool)");
        if (rec.values != cells) {
            std::ostringstream got;
            for (const auto& v : rec.values) got << rat_str(v) << " ";
            c.expect(false, tag + ": cells mismatch, got " + got.str());
        }
    }
    c.finish();
}

void criterion5_chain() {
    Criterion c("5. bound chain from f(20) > 64.725");
    auto t0 = Clock::now();
    auto ledger = chain_bound();
    double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    const Fact* c4 = ledger.find("c4_averaging");
    const Fact* c7 = ledger.find("c7_chain");
    const Fact* alpha = ledger.find("alpha_upper");
    c.expect(c4 && c4->value > parse_rat("1703/10000"), "c_4 > 0.1703 (exact one-sided)");
    bool c7_ok = c7 && c7->value >= parse_rat("1814/10000");
    c.expect(c7_ok, "c_7 >= 0.1814 (exact one-sided)");
    bool alpha_ok = alpha && alpha->value <= parse_rat("3186/10000");
    c.expect(alpha_ok, "alpha <= 0.3186 (exact one-sided)");
    if (c7 && !c7_ok) {
        c.detail << "    note: best provable chain gives c_7 >= " << rat_str(c7->value) << " = "
                 << decimal6_str(c7->value) << " and alpha <= " << rat_str(alpha->value) << " = "
                 << decimal6_str(alpha->value)
                 << ";\n    both round to the published 0.1814 / 0.3186 at four decimals but "
                    "fall short as one-sided bounds by 607/483840000 ~ 1.25e-6.\n";
    }
    c.expect(ledger.provenance_resolves(), "ledger provenance resolves");
    c.expect(secs < 1.0, "chain runtime under 1s");

    ChainOptions plain;
    plain.seed_n = 8;
    plain.seed_f = Rat(6);
    plain.seed_strict = false;
    plain.use_recursions = false;
    auto ledger8 = chain_bound(plain);
    const Fact* alpha8 = ledger8.find("alpha_upper");
    c.expect(alpha8 && alpha8->value == rat(11, 28), "seed f(8)=6 alone gives alpha <= 11/28");
    c.finish();
}

void criterion6_join_oracle() {
    Criterion c("6. join partitions: construction and oracle agree on all graphs up to 5 vertices");
    for (int n = 1; n <= 5; ++n) {
        for (const auto& g : enumerate_graphs(n)) {
            int chi = edge_coloring(g).colors_used;
            int base = std::max(1, chi);
            for (int l = base; l <= base + 1; ++l) {
                Graph host = join_with_independent(g, l);
                int expectation = g.n * l - g.edge_count();
                int exact = cp_bruteforce(host, 0, 48);
                c.expect(exact == expectation, "oracle value at n=" + std::to_string(n) +
                                                   ",l=" + std::to_string(l));
                auto p = join_partition(g, l);
                auto chk = verify_partition(host, p);
                c.expect(chk.pass && chk.size == expectation,
                         "constructive partition at n=" + std::to_string(n) +
                             ",l=" + std::to_string(l));
            }
        }
    }
    c.expect_budget(10 * 60.0);
    c.finish();
}

void criterion7_y_and_h() {
    Criterion c("7. fixed-part and composite bound formulas");
    for (int l = 1; l <= 8; ++l) {
        long total = long(l) * l;
        c.expect(block_profile_minimum(total) == (3 * total + 3) / 4,
                 "profile minimization at l=" + std::to_string(l));
        c.expect(y_lower_bound(l) == Rat(2 * total - l * (l - 1) + (3 * total + 3) / 4),
                 "fixed-part closed form at l=" + std::to_string(l));
    }
    auto best = optimize_h(41);
    c.expect(best.has_value() && best->m == 9 && best->l == 8, "integer sweep peaks at m=9, l=8");
    if (best) {
        Rat coeff = best->bound / Rat(41 * 41);
        Rat slack = coeff - Rat(23) / 82;
        if (slack < 0) slack = -slack;
        c.expect(slack <= rat(1, 41), "n=41 coefficient within O(1/n) of 23/82");
    }
    c.expect(h_continuous_coefficient() == rat(23, 82), "continuous coefficient is exactly 23/82");
    c.finish();
}

void criterion8_ramsey() {
    Criterion c("8. greedy clique-removal coefficients");
    c.expect(ramsey_chain(3, known_ramsey_upper()) == rat(13, 30), "13/30 at r=3");
    c.expect(ramsey_chain(7, known_ramsey_upper()) > parse_rat("41/100"), "above 0.41 at r=7");
    c.expect_budget(1.0);
    c.finish();
}

void criterion9_witnesses() {
    Criterion c("9. disjoint monochromatic 4-sets in 10000 planted colorings");
    std::mt19937_64 rng(20240817);
    int good = 0;
    const int trials = 10000;
    for (int t = 0; t < trials; ++t) {
        Graph g(20);
        for (int i = 0; i < 20; ++i)
            for (int j = i + 1; j < 20; ++j)
                if (rng() & 1) g.add_edge(i, j);
        std::vector<int> perm(20);
        for (int i = 0; i < 20; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        bool clique_side = rng() & 1;
        for (int a = 0; a < 5; ++a)
            for (int b = a + 1; b < 5; ++b) {
                if (clique_side) {
                    if (!g.edge(perm[a], perm[b])) g.add_edge(perm[a], perm[b]);
                } else {
                    g.remove_edge(perm[a], perm[b]);
                }
            }
        auto pair = find_disjoint_mono_k4(g);
        if (pair && verify_mono_k4_pair(g, *pair)) ++good;
    }
    c.expect(good == trials, "verified witnesses in " + std::to_string(good) + "/" +
                                 std::to_string(trials) + " colorings");
    c.expect_budget(2 * 60.0);
    c.finish();
}

void criterion10_properties() {
    Criterion c("10. property suites");
    // canonical form invariance over 1e5 random permutation pairs
    std::mt19937_64 rng(77);
    int bad = 0;
    for (int t = 0; t < 100000; ++t) {
        int n = 1 + int(rng() % 10);
        Graph g(n);
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (rng() & 1) g.add_edge(i, j);
        std::vector<int> perm(n);
        for (int i = 0; i < n; ++i) perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        if (canonical_form(g) != canonical_form(relabel(g, perm))) ++bad;
        if (complement(complement(g)) != g) ++bad;
    }
    c.expect(bad == 0, "canonical invariance and complement involution, 1e5 trials");

    // LP relaxation dominance on every graph with at most 5 vertices
    for (int n = 2; n <= 5; ++n)
        for (const auto& g : enumerate_graphs(n))
            for (int r : {3, 4, 5})
                if (nu(g, r) < Rat(v_integer(g, r))) {
                    c.expect(false, "relaxation dominance at n=" + std::to_string(n));
                }

    // normalized lower bounds nondecreasing on every search transcript
    auto audit = [&](const SearchResult& result, const std::string& tag) {
        c.expect(certify_level_sequence(lambda_transcript(result)),
                 "normalized transcript bound nondecreasing: " + tag);
    };
    if (!table_run.levels.empty()) audit(table_run, "table run");
    for (int d : {1, 3}) {
        SearchOptions opt;
        opt.r = 4;
        opt.n0 = 5;
        opt.depth = d;
        opt.n_max = 9;
        opt.workers = hardware_workers();
        audit(run_search(opt), "depth " + std::to_string(d));
    }
    c.finish();
}

}  // namespace

int main() {
    criterion1_kcover();
    criterion2_designs();
    criterion3_lp_ground_truth();
    criterion4_table();
    criterion5_chain();
    criterion6_join_oracle();
    criterion7_y_and_h();
    criterion8_ramsey();
    criterion9_witnesses();
    criterion10_properties();
    if (failures) std::cout << failures << " criterion(s) failed\n";
    else std::cout << "all criteria passed\n";
    return failures == 0 ? 0 : 1;
}
