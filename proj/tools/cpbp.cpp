// Command-line front end: cover construction and verification, design
// construction, clique partitions, packing LPs, the extension search, and
// bound chains. Exit codes: 0 success/pass, 1 verification failure,
// 2 usage or capacity error.

#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <random>
#include <sstream>

#include "cpbp/biclique_cover.hpp"
#include "cpbp/bounds.hpp"
#include "cpbp/design.hpp"
#include "cpbp/graph6.hpp"
#include "cpbp/h_graphs.hpp"
#include "cpbp/packing.hpp"
#include "cpbp/search.hpp"

using namespace cpbp;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot open " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write " + path);
    os << text;
}

void print_histogram_csv(const CoverageReport& rep, std::ostream& os) {
    os << "multiplicity,edges\n";
    for (auto& [mult, count] : rep.histogram) os << mult << "," << count << "\n";
}

int run(int argc, char** argv) {
    CLI::App app{"clique partition and biclique cover toolkit"};
    app.require_subcommand(1);
    app.fallthrough();
    int workers = default_workers();
    app.add_option("--workers", workers, "worker threads for parallel sections");

    // ---- cover ----
    auto* cover = app.add_subcommand("cover", "biclique coverings of complete graphs");
    cover->require_subcommand(1);
    auto* cover_build = cover->add_subcommand("build", "construct an exact k-covering");
    int cb_n = 0, cb_k = 1;
    std::string cb_out;
    bool cb_verify = false;
    cover_build->add_option("--n", cb_n, "vertex count")->required();
    cover_build->add_option("--k", cb_k, "target multiplicity")->required();
    cover_build->add_option("--out", cb_out, "write bicliques as JSON lines");
    cover_build->add_flag("--verify", cb_verify, "verify the cover after building");
    auto* cover_verify = cover->add_subcommand("verify", "verify a cover file");
    int cv_n = 0, cv_k = 1;
    std::string cv_in;
    cover_verify->add_option("--n", cv_n, "vertex count")->required();
    cover_verify->add_option("--k", cv_k, "target multiplicity")->required();
    cover_verify->add_option("--in", cv_in, "cover file (JSON lines)")->required();

    // ---- design ----
    auto* design = app.add_subcommand("design", "bounded-intersection set families");
    design->require_subcommand(1);
    auto* design_build = design->add_subcommand("build", "construct a residue design");
    int db_n = 0, db_t = 1, db_m = 1;
    std::string db_out;
    design_build->add_option("--n", db_n, "number of sets")->required();
    design_build->add_option("--t", db_t, "pairwise intersection bound");
    design_build->add_option("--m", db_m, "set size")->required();
    design_build->add_option("--out", db_out, "write the design as JSON");
    auto* design_verify = design->add_subcommand("verify", "verify a design file");
    std::string dv_in;
    design_verify->add_option("--in", dv_in, "design JSON file")->required();

    // ---- partition ----
    auto* part = app.add_subcommand("partition", "clique partitions");
    part->require_subcommand(1);
    auto* part_join = part->add_subcommand("join", "partition g joined with an empty graph");
    std::string pj_g6;
    int pj_l = 1;
    std::string pj_out, pj_host_out;
    part_join->add_option("--graph6", pj_g6, "host graph, graph6")->required();
    part_join->add_option("--l", pj_l, "number of added independent vertices")->required();
    part_join->add_option("--out", pj_out, "write the partition as JSON");
    part_join->add_option("--host-out", pj_host_out, "write the joined host as graph6");
    auto* part_verify = part->add_subcommand("verify", "verify a partition file");
    std::string pv_g6, pv_parts;
    part_verify->add_option("--graph6", pv_g6, "host graph, graph6")->required();
    part_verify->add_option("--parts", pv_parts, "partition JSON file")->required();
    auto* part_oracle = part->add_subcommand("oracle", "exact minimum by branch and bound");
    std::string po_g6;
    int po_r = 0, po_max_edges = 30;
    part_oracle->add_option("--graph6", po_g6, "graph, graph6")->required();
    part_oracle->add_option("--r", po_r, "clique size cap (0 = unrestricted)");
    part_oracle->add_option("--max-edges", po_max_edges, "edge guardrail");

    // ---- nu ----
    auto* nu_cmd = app.add_subcommand("nu", "fractional clique packing value");
    std::string nu_g6;
    int nu_r = 4;
    std::string nu_lp_out;
    bool nu_json = false;
    nu_cmd->add_option("--graph6", nu_g6, "graph, graph6")->required();
    nu_cmd->add_option("--r", nu_r, "largest clique size");
    nu_cmd->add_option("--lp-out", nu_lp_out, "export the LP in text form");
    nu_cmd->add_flag("--json", nu_json, "emit JSON with graph6 and exact value");

    // ---- fexhaust ----
    auto* fex = app.add_subcommand("fexhaust", "exhaustive minimum of nu(g) + nu(~g)");
    int fx_n = 6, fx_r = 4;
    fex->add_option("--n", fx_n, "vertex count (at most 8)")->required();
    fex->add_option("--r", fx_r, "largest clique size");

    // ---- search ----
    auto* search = app.add_subcommand("search", "extension search for minimum packing values");
    SearchOptions sopt;
    std::string s_out;
    search->add_option("--r", sopt.r, "largest clique size");
    search->add_option("--n0", sopt.n0, "exhaustive seed size (at most 8)");
    search->add_option("--depth", sopt.depth, "order statistic driving the levels");
    search->add_option("--nmax", sopt.n_max, "stop after this vertex count");
    search->add_option("--out", s_out, "write the order-statistic table as CSV");
    search->add_option("--checkpoint", sopt.checkpoint_dir,
                       "checkpoint directory (resumes matching runs)");

    // ---- bounds ----
    auto* bounds = app.add_subcommand("bounds", "bound propagation");
    bounds->require_subcommand(1);
    auto* bchain = bounds->add_subcommand("chain", "scaling-limit chain from an f-value seed");
    std::string seed_spec, chain_json_out;
    bool chain_no_rec = false;
    bchain->add_option("--seed", seed_spec, "seed as fR_N=p/q, e.g. f4_20=64725/1000");
    bchain->add_flag("--no-recursions", chain_no_rec, "averaging bound only");
    bchain->add_option("--json-out", chain_json_out, "persist the fact ledger as JSON");
    auto* bramsey = bounds->add_subcommand("ramsey", "greedy clique-removal coefficient");
    int br_r = 7;
    bramsey->add_option("--r", br_r, "largest clique size");
    auto* bk20 = bounds->add_subcommand("k20", "vertex-disjoint monochromatic 4-set search");
    std::string k20_g6;
    int k20_trials = 0;
    long k20_seed = 1;
    bk20->add_option("--graph6", k20_g6, "20-vertex coloring (edges = one color class)");
    bk20->add_option("--trials", k20_trials, "random colorings with a planted 5-set");
    bk20->add_option("--rng-seed", k20_seed, "seed for --trials");

    // ---- hbuild ----
    auto* hb = app.add_subcommand("hbuild", "composite lower-bound graph");
    std::string hb_g6, hb_out, hb_labels;
    int hb_l = 1;
    hb->add_option("--graph6", hb_g6, "inner graph, graph6")->required();
    hb->add_option("--l", hb_l, "side parameter")->required();
    hb->add_option("--out", hb_out, "write the composite as graph6");
    hb->add_option("--labels", hb_labels, "write part labels as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // help requested: exit 0 with the synopsis
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints the message and synopsis pointer
        return 2;
    }

    if (cover_build->parsed()) {
        auto c = k_cover(cb_n, cb_k);
        if (!cb_out.empty()) write_file(cb_out, cover_to_jsonl(c));
        if (c.design_size_bound_breached)
            std::cerr << "note: design universe exceeded its size bound at this scale\n";
        if (cb_verify || cb_out.empty()) {
            auto rep = verify_cover(c, {cb_k});
            print_histogram_csv(rep, std::cout);
            std::cout << "size," << rep.size << "\n";
            if (!rep.pass) {
                std::cerr << "cover verification failed\n";
                return 1;
            }
        }
        return 0;
    }
    if (cover_verify->parsed()) {
        auto c = cover_from_jsonl(read_file(cv_in), cv_n);
        auto rep = verify_cover(c, {cv_k});
        print_histogram_csv(rep, std::cout);
        std::cout << "size," << rep.size << "\n";
        if (!rep.pass) {
            for (std::size_t i = 0; i < rep.offending.size() && i < 10; ++i) {
                auto [a, b, cnt] = rep.offending[i];
                std::cerr << "edge {" << a << "," << b << "} covered " << cnt << " times\n";
            }
            return 1;
        }
        return 0;
    }
    if (design_build->parsed()) {
        auto d = build_design(db_n, db_t, db_m);
        nlohmann::json j = design_to_json(d);
        if (!db_out.empty()) write_file(db_out, j.dump(1) + "\n");
        else std::cout << j.dump(1) << "\n";
        if (d.size_bound_breached)
            std::cerr << "note: universe size exceeds the asymptotic bound at this n\n";
        return 0;
    }
    if (design_verify->parsed()) {
        auto d = design_from_json(nlohmann::json::parse(read_file(dv_in)));
        auto rep = verify_design(d);
        std::cout << "max_intersection," << rep.max_intersection << "\n"
                  << "set_size_min," << rep.min_set_size << "\n"
                  << "set_size_max," << rep.max_set_size << "\n"
                  << "pass," << (rep.pass ? "true" : "false") << "\n";
        return rep.pass ? 0 : 1;
    }
    if (part_join->parsed()) {
        Graph g = graph6_decode(pj_g6);
        auto p = join_partition(g, pj_l);
        nlohmann::json j = partition_to_json(p);
        if (!pj_out.empty()) write_file(pj_out, j.dump() + "\n");
        else std::cout << j.dump() << "\n";
        if (!pj_host_out.empty())
            write_file(pj_host_out, graph6_encode(join_with_independent(g, pj_l)) + "\n");
        auto chk = verify_partition(join_with_independent(g, pj_l), p);
        std::cerr << "size " << chk.size << ", expected " << g.n * pj_l - g.edge_count() << "\n";
        return chk.pass ? 0 : 1;
    }
    if (part_verify->parsed()) {
        Graph g = graph6_decode(pv_g6);
        auto p = partition_from_json(nlohmann::json::parse(read_file(pv_parts)));
        auto chk = verify_partition(g, p);
        std::cout << "size," << chk.size << "\n"
                  << "pass," << (chk.pass ? "true" : "false") << "\n";
        if (!chk.pass) std::cerr << chk.reason << "\n";
        return chk.pass ? 0 : 1;
    }
    if (part_oracle->parsed()) {
        Graph g = graph6_decode(po_g6);
        std::cout << cp_bruteforce(g, po_r, po_max_edges) << "\n";
        return 0;
    }
    if (nu_cmd->parsed()) {
        Graph g = graph6_decode(nu_g6);
        auto gamma = ObjectiveWeights::packing_default(nu_r);
        if (!nu_lp_out.empty()) write_file(nu_lp_out, nu_lp_text(g, nu_r, gamma));
        Rat v = nu(g, nu_r, gamma);
        if (nu_json) {
            nlohmann::json j{{"graph", nu_g6}, {"r", nu_r}, {"nu", rat_str(v)},
                             {"nu_decimal", decimal6_str(v)}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << rat_str(v) << "\n";
        }
        return 0;
    }
    if (fex->parsed()) {
        auto res = f_exhaustive(fx_n, fx_r, workers);
        nlohmann::json mins = nlohmann::json::array();
        for (const auto& cf : res.minimizers) mins.push_back(graph6_encode(from_canonical(cf)));
        nlohmann::json j{{"n", fx_n}, {"r", fx_r}, {"value", rat_str(res.value)},
                         {"value_decimal", decimal6_str(res.value)}, {"minimizers", mins}};
        std::cout << j.dump() << "\n";
        return 0;
    }
    if (search->parsed()) {
        sopt.workers = workers;
        sopt.gamma = ObjectiveWeights::packing_default(sopt.r);
        if (sopt.checkpoint_dir.empty())
            if (const char* env = std::getenv("CPBP_CHECKPOINT_DIR")) sopt.checkpoint_dir = env;
        auto result = run_search(sopt);
        std::string csv = search_table_csv(result, sopt.depth);
        if (!s_out.empty()) write_file(s_out, csv);
        else std::cout << csv;
        for (const auto& rec : result.levels)
            std::cerr << "n=" << rec.n << " pool=" << rec.pool_size << " min="
                      << rat_str(rec.lambda) << (rec.exact ? "" : " (lower bound)") << "\n";
        return 0;
    }
    if (bchain->parsed()) {
        ChainOptions copt;
        if (!seed_spec.empty()) {
            auto eq = seed_spec.find('=');
            auto us = seed_spec.find('_');
            if (eq == std::string::npos || us == std::string::npos || seed_spec[0] != 'f')
                throw CLI::ValidationError("--seed", "expected fR_N=p/q");
            copt.seed_r = std::stoi(seed_spec.substr(1, us - 1));
            copt.seed_n = std::stol(seed_spec.substr(us + 1, eq - us - 1));
            copt.seed_f = parse_rat(seed_spec.substr(eq + 1));
        }
        copt.use_recursions = !chain_no_rec;
        auto ledger = chain_bound(copt);
        if (!chain_json_out.empty()) write_file(chain_json_out, ledger.to_json().dump(1) + "\n");
        for (const auto& f : ledger.facts) {
            std::cout << f.id << " [" << f.kind << "]";
            if (f.n) std::cout << " n=" << *f.n;
            std::cout << " value=" << rat_str(f.value) << " (" << decimal6_str(f.value) << ")";
            if (!f.inputs.empty()) {
                std::cout << " <-";
                for (const auto& in : f.inputs) std::cout << " " << in;
            }
            std::cout << "  # " << f.note << "\n";
        }
        return 0;
    }
    if (bramsey->parsed()) {
        Rat v = ramsey_chain(br_r, known_ramsey_upper());
        std::cout << rat_str(v) << " (" << decimal6_str(v) << ")\n";
        return 0;
    }
    if (bk20->parsed()) {
        if (k20_trials > 0) {
            std::mt19937_64 rng(static_cast<std::uint64_t>(k20_seed));
            int found = 0;
            for (int t = 0; t < k20_trials; ++t) {
                Graph g(20);
                for (int i = 0; i < 20; ++i)
                    for (int j = i + 1; j < 20; ++j)
                        if (rng() & 1) g.add_edge(i, j);
                std::vector<int> perm(20);
                for (int i = 0; i < 20; ++i) perm[i] = i;
                std::shuffle(perm.begin(), perm.end(), rng);
                for (int a = 0; a < 5; ++a)
                    for (int b = a + 1; b < 5; ++b)
                        if (!g.edge(perm[a], perm[b])) g.add_edge(perm[a], perm[b]);
                auto pair = find_disjoint_mono_k4(g);
                if (pair && verify_mono_k4_pair(g, *pair)) ++found;
            }
            std::cout << found << "/" << k20_trials << " colorings yielded verified witnesses\n";
            return found == k20_trials ? 0 : 1;
        }
        if (k20_g6.empty()) throw CLI::ValidationError("k20", "need --graph6 or --trials");
        Graph g = graph6_decode(k20_g6);
        auto pair = find_disjoint_mono_k4(g);
        if (!pair) {
            std::cout << "none\n";
            return 1;
        }
        nlohmann::json j{{"first", mask_to_vertices(pair->first)},
                         {"second", mask_to_vertices(pair->second)},
                         {"first_color", pair->first_in_graph ? "edge" : "nonedge"},
                         {"second_color", pair->second_in_graph ? "edge" : "nonedge"}};
        std::cout << j.dump() << "\n";
        return 0;
    }
    if (hb->parsed()) {
        Graph g = graph6_decode(hb_g6);
        JoinGraph h = build_H(g, hb_l);
        std::string g6 = graph6_encode(h.graph);
        if (!hb_out.empty()) write_file(hb_out, g6 + "\n");
        else std::cout << g6 << "\n";
        if (!hb_labels.empty()) {
            nlohmann::json labels = nlohmann::json::array();
            static const char* names[] = {"graph", "indep_left", "clique_left", "clique_right",
                                          "indep_right"};
            for (auto p : h.part) labels.push_back(names[static_cast<int>(p)]);
            write_file(hb_labels, nlohmann::json{{"m", h.m}, {"l", h.l},
                                                 {"parts", labels}}.dump(1) + "\n");
        }
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const capacity_error& e) {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
