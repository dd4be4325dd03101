#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cpbp/packing.hpp"

namespace cpbp {

struct SearchOptions {
    int r = 4;
    int n0 = 6;
    int depth = 11;       // order statistic controlling the next level
    int n_max = 12;
    ObjectiveWeights gamma = ObjectiveWeights::packing_default(4);
    int workers = 1;
    std::size_t pool_cap = 10'000'000;
    std::string checkpoint_dir;  // empty = no checkpointing
};

struct PoolEntry {
    Graph graph;  // canonical representative
    Rat value;    // nu(g) + nu(complement g)
};

struct LevelRecord {
    int n = 0;
    std::optional<Rat> level;  // nullopt encodes +infinity (the seed level)
    std::size_t pool_size = 0;
    Rat lambda;
    bool exact = false;              // otherwise a certified lower bound
    std::vector<Rat> values;         // smallest distinct pool values, up to depth
};

struct SearchResult {
    std::vector<LevelRecord> levels;
};

/// The defining inequality l_{n+1} >= (n+1)/(n-1) * l_n, checked pairwise.
/// Applied to the per-level lower bounds it is exactly the monotonicity audit
/// for Lambda[n]/(n(n-1)).
inline bool certify_level_sequence(const std::vector<std::pair<int, Rat>>& seq) {
    for (std::size_t i = 1; i < seq.size(); ++i) {
        auto [n_prev, l_prev] = seq[i - 1];
        auto [n_cur, l_cur] = seq[i];
        if (n_cur != n_prev + 1) return false;
        if (n_prev < 2) return false;
        if (l_cur * (n_prev - 1) < l_prev * (n_prev + 1)) return false;
    }
    return true;
}

namespace detail {

inline std::vector<Rat> distinct_values(const std::vector<PoolEntry>& pool, std::size_t cap) {
    std::set<Rat> vals;
    for (const auto& e : pool) vals.insert(e.value);
    std::vector<Rat> out;
    for (const auto& v : vals) {
        out.push_back(v);
        if (out.size() == cap) break;
    }
    return out;
}

// ---- checkpoint files: binary pool snapshot + JSON manifest ----

constexpr std::uint32_t kPoolFormatVersion = 1;

inline void write_pool(const std::filesystem::path& path, int n,
                       const std::vector<PoolEntry>& pool) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot write checkpoint: " + path.string());
    auto put32 = [&](std::uint32_t v) { os.write(reinterpret_cast<const char*>(&v), 4); };
    os.write("CPBPPOOL", 8);
    put32(kPoolFormatVersion);
    put32(static_cast<std::uint32_t>(n));
    put32(static_cast<std::uint32_t>(pool.size()));
    for (const auto& e : pool) {
        std::string bytes = canonical_form(e.graph).bytes;
        put32(static_cast<std::uint32_t>(bytes.size()));
        os.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
        std::string num = e.value.get_num().get_str();
        std::string den = e.value.get_den().get_str();
        put32(static_cast<std::uint32_t>(num.size()));
        os.write(num.data(), static_cast<std::streamsize>(num.size()));
        put32(static_cast<std::uint32_t>(den.size()));
        os.write(den.data(), static_cast<std::streamsize>(den.size()));
    }
}

inline std::vector<PoolEntry> read_pool(const std::filesystem::path& path, int expect_n) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("cannot read checkpoint: " + path.string());
    char magic[8];
    is.read(magic, 8);
    if (std::string(magic, 8) != "CPBPPOOL") throw std::runtime_error("bad pool file magic");
    auto get32 = [&]() {
        std::uint32_t v = 0;
        is.read(reinterpret_cast<char*>(&v), 4);
        return v;
    };
    if (get32() != kPoolFormatVersion) throw std::runtime_error("pool file version mismatch");
    int n = static_cast<int>(get32());
    if (n != expect_n) throw std::runtime_error("pool file holds the wrong level");
    std::uint32_t count = get32();
    std::vector<PoolEntry> pool;
    pool.reserve(count);
    auto get_str = [&]() {
        std::uint32_t len = get32();
        std::string s(len, '\0');
        is.read(s.data(), len);
        return s;
    };
    for (std::uint32_t i = 0; i < count; ++i) {
        CanonicalForm cf;
        cf.n = n;
        cf.bytes = get_str();
        std::string num = get_str(), den = get_str();
        Rat v;
        v.set_str(num + "/" + den, 10);
        v.canonicalize();
        pool.push_back(PoolEntry{from_canonical(cf), v});
    }
    if (!is) throw std::runtime_error("truncated pool file");
    return pool;
}

inline nlohmann::json level_to_json(const LevelRecord& rec) {
    nlohmann::json j;
    j["n"] = rec.n;
    j["level"] = rec.level ? rat_str(*rec.level) : "inf";
    j["pool_size"] = rec.pool_size;
    j["lambda"] = rat_str(rec.lambda);
    j["exact"] = rec.exact;
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& v : rec.values) vals.push_back(rat_str(v));
    j["values"] = vals;
    return j;
}

inline LevelRecord level_from_json(const nlohmann::json& j) {
    LevelRecord rec;
    rec.n = j.at("n").get<int>();
    std::string lvl = j.at("level").get<std::string>();
    if (lvl != "inf") rec.level = parse_rat(lvl);
    rec.pool_size = j.at("pool_size").get<std::size_t>();
    rec.lambda = parse_rat(j.at("lambda").get<std::string>());
    rec.exact = j.at("exact").get<bool>();
    for (const auto& v : j.at("values")) rec.values.push_back(parse_rat(v.get<std::string>()));
    return rec;
}

}  // namespace detail

/// Iterated extend-evaluate-prune search. The pool at size n is exactly the
/// set of classes with value at or below the current level, so every
/// recorded minimum is the true minimum while the pool survives; when it
/// empties the level itself is the certified lower bound.
inline SearchResult run_search(const SearchOptions& opt) {
    if (opt.n0 > 8) throw capacity_error("run_search: exhaustive seed capped at n0 = 8");
    if (opt.depth < 1) throw std::invalid_argument("run_search: depth must be positive");
    namespace fs = std::filesystem;

    SearchResult result;
    std::vector<PoolEntry> pool;
    int n = opt.n0;
    std::optional<Rat> level;  // +infinity at the seed

    // resume from a checkpoint when the manifest matches the run parameters
    bool resumed = false;
    fs::path ckdir;
    if (!opt.checkpoint_dir.empty()) {
        ckdir = opt.checkpoint_dir;
        fs::create_directories(ckdir);
        fs::path manifest = ckdir / "manifest.json";
        if (fs::exists(manifest)) {
            std::ifstream is(manifest);
            nlohmann::json j = nlohmann::json::parse(is);
            if (j.value("r", -1) == opt.r && j.value("n0", -1) == opt.n0 &&
                j.value("depth", -1) == opt.depth && !j.at("levels").empty()) {
                for (const auto& lj : j.at("levels"))
                    result.levels.push_back(detail::level_from_json(lj));
                const auto& last = result.levels.back();
                if (last.exact) {
                    n = last.n;
                    level = last.level;
                    pool = detail::read_pool(ckdir / ("pool_" + std::to_string(n) + ".bin"), n);
                    resumed = true;
                } else {
                    return result;  // run already finished with a terminal bound
                }
            }
        }
    }

    auto checkpoint = [&]() {
        if (ckdir.empty()) return;
        nlohmann::json j;
        j["version"] = 1;
        j["r"] = opt.r;
        j["n0"] = opt.n0;
        j["depth"] = opt.depth;
        nlohmann::json levels = nlohmann::json::array();
        for (const auto& rec : result.levels) levels.push_back(detail::level_to_json(rec));
        j["levels"] = levels;
        std::ofstream os(ckdir / "manifest.json");
        os << j.dump(1) << "\n";
    };

    if (!resumed) {
        // exhaustive seed
        auto sweep = f_sweep(opt.n0, opt.r, opt.gamma, opt.workers);
        pool.reserve(sweep.size());
        for (auto& e : sweep) pool.push_back(PoolEntry{std::move(e.graph), std::move(e.value)});
    }

    while (true) {
        if (!resumed || n != result.levels.back().n) {
            LevelRecord rec;
            rec.n = n;
            rec.level = level;
            rec.pool_size = pool.size();
            rec.values = detail::distinct_values(pool, opt.depth);
            rec.lambda = rec.values.front();
            rec.exact = true;
            result.levels.push_back(rec);
            if (!ckdir.empty()) {
                detail::write_pool(ckdir / ("pool_" + std::to_string(n) + ".bin"), n, pool);
                checkpoint();
            }
        }
        resumed = false;
        if (n >= opt.n_max) break;

        // next level from the depth-th smallest distinct value
        const LevelRecord& rec = result.levels.back();
        std::optional<Rat> alpha;
        if (rec.values.size() >= std::size_t(opt.depth))
            alpha = rec.values[opt.depth - 1];
        else
            alpha = level;  // fewer than depth distinct values: keep the old level
        std::optional<Rat> next_level;
        if (alpha) next_level = (*alpha) * (n + 1) / (n - 1);

        // phase A: generate extensions, prefilter cheaply, deduplicate.
        // Parents are processed in blocks to bound peak memory.
        std::map<CanonicalForm, Graph> merged;
        const std::size_t block = 512;
        for (std::size_t base = 0; base < pool.size(); base += block) {
            std::size_t count = std::min(block, pool.size() - base);
            std::vector<std::map<CanonicalForm, Graph>> local(count);
            parallel_for(count, opt.workers, [&](std::size_t bi) {
                const Graph& parent = pool[base + bi].graph;
                std::uint64_t limit = std::uint64_t{1} << parent.n;
                for (std::uint64_t nbhd = 0; nbhd < limit; ++nbhd) {
                    Graph h(parent.n + 1);
                    for (int i = 0; i < parent.n; ++i) h.adj[i] = parent.adj[i];
                    h.adj[parent.n] = nbhd;
                    std::uint64_t m = nbhd;
                    while (m) {
                        int v = std::countr_zero(m);
                        m &= m - 1;
                        h.adj[v] |= std::uint64_t{1} << parent.n;
                    }
                    if (next_level) {
                        // a greedy packing already exceeding the level
                        // certifies the extension is out
                        Rat lb = greedy_packing_value(h, opt.gamma) +
                                 greedy_packing_value(complement(h), opt.gamma);
                        if (lb > *next_level) continue;
                    }
                    CanonicalForm cf = canonical_form(h);
                    local[bi].try_emplace(std::move(cf), from_canonical(cf));
                }
            });
            for (auto& lm : local)
                for (auto& [cf, graph] : lm) merged.try_emplace(cf, std::move(graph));
        }

        // phase B: exact evaluation of the surviving candidates
        std::vector<const Graph*> candidates;
        candidates.reserve(merged.size());
        for (auto& [cf, graph] : merged) candidates.push_back(&graph);
        std::vector<Rat> values(candidates.size());
        parallel_for(candidates.size(), opt.workers, [&](std::size_t i) {
            values[i] = nu_pair(*candidates[i], opt.r, opt.gamma);
        });

        std::vector<PoolEntry> next_pool;
        for (std::size_t i = 0; i < candidates.size(); ++i)
            if (!next_level || values[i] <= *next_level)
                next_pool.push_back(PoolEntry{*candidates[i], values[i]});
        if (next_pool.size() > opt.pool_cap)
            throw capacity_error("run_search: pool exceeds cap of " +
                                 std::to_string(opt.pool_cap));

        ++n;
        level = next_level;
        if (next_pool.empty()) {
            // no survivors: the level itself is a certified lower bound
            LevelRecord terminal;
            terminal.n = n;
            terminal.level = level;
            terminal.pool_size = 0;
            terminal.lambda = level ? *level : Rat(0);
            terminal.exact = false;
            result.levels.push_back(terminal);
            checkpoint();
            break;
        }
        pool = std::move(next_pool);
    }
    return result;
}

/// CSV matrix mirroring the published layout: one row per order statistic,
/// one column per vertex count. Cells beyond the recorded distinct values
/// print "*"; a terminal lower-bound level prints as ">value".
inline std::string search_table_csv(const SearchResult& result, int depth) {
    std::ostringstream os;
    os << "i";
    for (const auto& rec : result.levels) os << "," << rec.n;
    os << "\n";
    for (int i = 0; i < depth; ++i) {
        os << (i + 1);
        for (const auto& rec : result.levels) {
            os << ",";
            if (!rec.exact && rec.pool_size == 0) {
                if (i == 0) os << ">" << decimal_str(rec.lambda);
                else os << "*";
            } else if (std::size_t(i) < rec.values.size()) {
                os << decimal_str(rec.values[i]);
            } else {
                os << "*";
            }
        }
        os << "\n";
    }
    return os.str();
}

/// The (n, Lambda) transcript used for the monotonicity audit.
inline std::vector<std::pair<int, Rat>> lambda_transcript(const SearchResult& result) {
    std::vector<std::pair<int, Rat>> seq;
    for (const auto& rec : result.levels) seq.emplace_back(rec.n, rec.lambda);
    return seq;
}

}  // namespace cpbp
