#pragma once

#include "sumfree/report_io.hpp"
#include "sumfree/rng.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <mutex>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

namespace sumfree {

inline const std::vector<std::string>& all_check_names() {
    static const std::vector<std::string> names = {
        "schur_backend",   "triple_lower_bound",      "coset_pair_bound",
        "heavy_index_mass", "middle_sum",             "special_direction_bound",
        "cosine_sum",      "density_global",          "density_type3",
        "density_empirical", "edge_coset_density"};
    return names;
}

/// Hard checks are theorems under exact arithmetic: any failure is a defect
/// and fails the sweep. The rest are recorded observations (strict
/// inequalities at their boundary, or bounds with unpinned constants).
inline bool is_hard_check(const std::string& name) {
    static const std::vector<std::string> hard = {
        "schur_backend",  "triple_lower_bound", "coset_pair_bound", "heavy_index_mass",
        "middle_sum",     "special_direction_bound", "density_global", "density_type3"};
    return std::find(hard.begin(), hard.end(), name) != hard.end();
}

inline std::vector<std::string> hard_check_names() {
    std::vector<std::string> out;
    for (const auto& name : all_check_names())
        if (is_hard_check(name)) out.push_back(name);
    return out;
}

/// Empty request means every known check; otherwise validates names and
/// returns them in canonical order.
inline std::vector<std::string> resolve_checks(const std::vector<std::string>& requested) {
    const auto& all = all_check_names();
    if (requested.empty()) return all;
    for (const auto& name : requested)
        if (std::find(all.begin(), all.end(), name) == all.end())
            throw std::invalid_argument("unknown check name: " + name);
    std::vector<std::string> out;
    for (const auto& name : all)
        if (std::find(requested.begin(), requested.end(), name) != requested.end())
            out.push_back(name);
    return out;
}

struct SweepConfig {
    std::uint64_t max_order = 12;
    std::uint64_t samples_per_group = 0;
    std::uint64_t rng_seed = 0;
    std::vector<std::string> checks;  // empty means every known check
    std::string output_path;
    ReportFormat format = ReportFormat::Csv;
    unsigned workers = 1;
    ConstantsConfig constants;
};

struct SweepResult {
    std::vector<BoundReport> rows;
    std::uint64_t hard_failures = 0;
    std::uint64_t subsets_evaluated = 0;
    std::uint64_t character_triples = 0;  // (group, subset, character) combinations visited
    std::uint64_t sampled_character_triples = 0;  // the seeded-random share of the above
};

namespace detail {

/// Keeps the single worst instance per check: failures beat passes beat
/// not-applicable, then smaller margin, then first arrival.
struct WorstTracker {
    bool have = false;
    int klass = 3;
    double margin = 0;
    BoundReport row;

    static int klass_of(const BoundReport& r) {
        if (r.outcome == Outcome::Fails) return 0;
        if (r.outcome == Outcome::Holds) return 1;
        return 2;
    }

    void offer(BoundReport r) {
        int k = klass_of(r);
        double m = r.margin();
        if (!have || k < klass || (k == klass && m < margin)) {
            have = true;
            klass = k;
            margin = m;
            row = std::move(r);
        }
    }
};

inline BoundReport not_applicable_report(const Subset& f, const std::string& name) {
    BoundReport r;
    r.check_name = name;
    r.context = context_of(f);
    return r;
}

/// t values for the heavy-index check: a fixed grid plus the near-optimal
/// sqrt(delta q), rationalized at denominator 2^20 so reports replay exactly.
inline std::vector<Rational> heavy_t_grid(const Rational& delta, std::uint64_t q) {
    std::vector<Rational> ts = {Rational(1, 4), Rational(1, 2), Rational(1)};
    if (delta > 0) {
        double root = std::sqrt(to_double(delta) * double(q));
        long long num = std::llround(root * 1048576.0);
        if (num >= 1) ts.emplace_back(num, 1048576);
    }
    return ts;
}

inline std::uint64_t stream_id(std::uint64_t tag, std::uint64_t group_index,
                               std::uint64_t sample_index) {
    return (tag << 56) | (group_index << 32) | sample_index;
}

}  // namespace detail

/// Characters a sweep evaluates for one subset: every nontrivial character
/// when there are at most 128, otherwise a seeded sample of 128 distinct
/// ones. Pure function of (seed, group_index, sample_index).
inline std::vector<std::uint64_t> character_ranks_for(const AbelianGroup& g, std::uint64_t seed,
                                                      std::uint64_t group_index,
                                                      std::uint64_t sample_index) {
    const std::uint64_t n = g.order();
    std::vector<std::uint64_t> ranks;
    if (n == 0 || n - 1 <= 128) {
        for (std::uint64_t r = 1; r < n; ++r) ranks.push_back(r);
        return ranks;
    }
    SplitMix64 rng = derive_stream(seed, detail::stream_id(1, group_index, sample_index));
    std::set<std::uint64_t> chosen;
    while (chosen.size() < 128) chosen.insert(1 + rng.next() % (n - 1));
    ranks.assign(chosen.begin(), chosen.end());
    return ranks;
}

/// Runs the enabled checks on one subset and returns one report per check:
/// the worst instance over all characters and parameters, or a
/// NotApplicable row when no instance applied.
inline std::vector<BoundReport> evaluate_subset_checks(
    const Subset& f, const std::vector<std::string>& enabled, const ConstantsConfig& constants,
    const std::vector<std::uint64_t>& char_ranks) {
    const AbelianGroup& g = f.group();
    auto on = [&](const char* name) {
        return std::find(enabled.begin(), enabled.end(), name) != enabled.end();
    };
    std::vector<detail::WorstTracker> trackers(enabled.size());
    auto offer = [&](BoundReport r) {
        auto it = std::find(enabled.begin(), enabled.end(), r.check_name);
        if (it != enabled.end()) trackers[std::size_t(it - enabled.begin())].offer(std::move(r));
    };

    if (on("schur_backend")) offer(check_schur_backend(f));
    if (on("special_direction_bound") && !f.empty() && f.size() != g.order() && !g.trivial())
        offer(check_special_direction_bound(f));
    if (on("cosine_sum")) offer(check_cosine_sum(f, constants));
    if (on("density_global") || on("density_type3") || on("density_empirical"))
        for (auto& r : check_density_bounds(f, constants)) offer(std::move(r));
    if (on("edge_coset_density")) offer(check_edge_coset_density(f, constants));

    bool per_char = on("triple_lower_bound") || on("coset_pair_bound") ||
                    on("heavy_index_mass") || on("middle_sum");
    if (per_char && !g.trivial()) {
        const Rational delta = schur_count_bruteforce(f).density;
        for (std::uint64_t cr : char_ranks) {
            Character c(g, cr);
            CosetProfile p = coset_profile(f, c);
            if (on("triple_lower_bound"))
                for (std::uint64_t l = 0; l < p.q; ++l)
                    for (std::uint64_t j = 0; j < p.q; ++j)
                        offer(check_triple_lower_bound(f, p, l, j));
            if (on("coset_pair_bound"))
                for (auto& r : check_coset_pair_bound(f, p, delta)) offer(std::move(r));
            if (on("heavy_index_mass"))
                for (const Rational& t : detail::heavy_t_grid(delta, p.q))
                    offer(check_heavy_index_mass(f, p, t, delta));
            if (on("middle_sum") && p.k) offer(check_middle_sum(f, p, delta));
        }
    }

    std::vector<BoundReport> out;
    out.reserve(enabled.size());
    for (std::size_t i = 0; i < enabled.size(); ++i) {
        if (trackers[i].have) out.push_back(std::move(trackers[i].row));
        else out.push_back(detail::not_applicable_report(f, enabled[i]));
    }
    return out;
}

/// Full sweep: exhaustive subsets for groups of order at most 12, seeded
/// samples above that. Work items run on a worker pool; results merge in
/// item order and then sort on the context columns, so output is a pure
/// function of (config, seed) regardless of scheduling.
inline SweepResult run_sweep(const SweepConfig& cfg) {
    if (cfg.max_order < 2) throw std::invalid_argument("sweep needs max_order >= 2");
    const std::vector<std::string> enabled = resolve_checks(cfg.checks);
    auto groups = enumerate_groups(cfg.max_order);
    std::erase_if(groups, [](const AbelianGroup& g) { return g.trivial(); });

    struct Item {
        std::size_t group_index;
        std::uint64_t begin, end;
        bool sampled;
    };
    std::vector<Item> items;
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
        const std::uint64_t n = groups[gi].order();
        if (n <= 12) {
            const std::uint64_t total = std::uint64_t(1) << n;
            for (std::uint64_t b = 0; b < total; b += 256)
                items.push_back({gi, b, std::min(total, b + 256), false});
        } else {
            for (std::uint64_t b = 0; b < cfg.samples_per_group; b += 16)
                items.push_back({gi, b, std::min(cfg.samples_per_group, b + 16), true});
        }
    }

    std::vector<std::vector<BoundReport>> results(items.size());
    std::vector<std::pair<std::uint64_t, std::uint64_t>> tallies(items.size());
    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    auto run_item = [&](std::size_t ii) {
        const Item& item = items[ii];
        const AbelianGroup& g = groups[item.group_index];
        std::vector<BoundReport> rows;
        std::uint64_t nsub = 0, ntrip = 0;
        for (std::uint64_t s = item.begin; s < item.end; ++s) {
            Subset f(g);
            if (item.sampled) {
                SplitMix64 rng =
                    derive_stream(cfg.rng_seed, detail::stream_id(0, item.group_index, s));
                f = sample_subset(g, rng, sample_probability(g, s));
            } else {
                for (std::uint64_t mask = s; mask; mask &= mask - 1)
                    f.insert(std::uint64_t(std::countr_zero(mask)));
            }
            auto chars = character_ranks_for(g, cfg.rng_seed, item.group_index, s);
            ntrip += chars.size();
            auto sub_rows = evaluate_subset_checks(f, enabled, cfg.constants, chars);
            rows.insert(rows.end(), std::make_move_iterator(sub_rows.begin()),
                        std::make_move_iterator(sub_rows.end()));
            ++nsub;
        }
        results[ii] = std::move(rows);
        tallies[ii] = {nsub, ntrip};
    };

    auto worker = [&] {
        while (true) {
            std::size_t ii = cursor.fetch_add(1);
            if (ii >= items.size()) break;
            try {
                run_item(ii);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                break;
            }
        }
    };

    const unsigned nworkers = std::max(1u, cfg.workers);
    if (nworkers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nworkers);
        for (unsigned w = 0; w < nworkers; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    SweepResult res;
    for (std::size_t ii = 0; ii < items.size(); ++ii) {
        res.rows.insert(res.rows.end(), std::make_move_iterator(results[ii].begin()),
                        std::make_move_iterator(results[ii].end()));
        res.subsets_evaluated += tallies[ii].first;
        res.character_triples += tallies[ii].second;
        if (items[ii].sampled) res.sampled_character_triples += tallies[ii].second;
    }
    auto key = [](const BoundReport& r) {
        return std::tie(r.context.group, r.context.subset, r.check_name, r.context.character,
                        r.context.params);
    };
    std::stable_sort(res.rows.begin(), res.rows.end(),
                     [&](const BoundReport& a, const BoundReport& b) { return key(a) < key(b); });
    for (const BoundReport& r : res.rows)
        if (r.outcome == Outcome::Fails && is_hard_check(r.check_name)) ++res.hard_failures;
    return res;
}

/// Writes rows to path in the chosen format. Binary mode keeps bytes
/// platform-independent; a failed write removes the partial file.
inline void write_report_file(const std::string& path, const std::vector<BoundReport>& rows,
                              ReportFormat format) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open report file: " + path);
    write_report_rows(os, rows, format);
    os.flush();
    if (!os) {
        os.close();
        std::error_code ec;
        std::filesystem::remove(path, ec);
        throw std::runtime_error("failed writing report file: " + path);
    }
}

namespace detail {

inline std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

inline std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    std::uint64_t v = 0;
    auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size())
        throw std::invalid_argument("bad integer for " + what + ": " + s);
    return v;
}

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        auto comma = s.find(',', pos);
        std::string tok =
            trim(s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos));
        if (!tok.empty()) out.push_back(tok);
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return out;
}

}  // namespace detail

/// Flat key = value config, mirroring the sweep flags: max_order, samples,
/// seed, checks, out, format, workers. The rng key pins the stream
/// algorithm; any value other than splitmix64-v1 is rejected. '#' starts a
/// comment line.
inline SweepConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    SweepConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = detail::trim(line);
        if (t.empty() || t[0] == '#') continue;
        auto eq = t.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key = value");
        std::string keyname = detail::trim(t.substr(0, eq));
        std::string value = detail::trim(t.substr(eq + 1));
        if (keyname == "max_order") cfg.max_order = detail::parse_u64(value, keyname);
        else if (keyname == "samples") cfg.samples_per_group = detail::parse_u64(value, keyname);
        else if (keyname == "seed") cfg.rng_seed = detail::parse_u64(value, keyname);
        else if (keyname == "checks") cfg.checks = detail::split_list(value);
        else if (keyname == "out") cfg.output_path = value;
        else if (keyname == "format") {
            if (value == "csv") cfg.format = ReportFormat::Csv;
            else if (value == "jsonl") cfg.format = ReportFormat::Jsonl;
            else throw std::invalid_argument("unknown report format: " + value);
        } else if (keyname == "workers") {
            cfg.workers = static_cast<unsigned>(detail::parse_u64(value, keyname));
        } else if (keyname == "rng") {
            if (value != kRngAlgorithm)
                throw std::invalid_argument("unsupported rng algorithm: " + value);
        } else {
            throw std::invalid_argument("unknown config key: " + keyname);
        }
    }
    return cfg;
}

/// Recomputes the report a serialized row describes from its context
/// columns alone. Rows with an empty character column for per-character
/// checks replay to their NotApplicable form.
inline BoundReport replay_report(const std::string& check_name, const std::string& group_spec,
                                 const std::string& subset_spec, const std::string& char_spec,
                                 const std::string& params, const ConstantsConfig& constants = {}) {
    AbelianGroup g = parse_group_spec(group_spec);
    Subset f = parse_subset_spec(g, subset_spec);
    if (check_name == "schur_backend") return check_schur_backend(f);
    if (check_name == "special_direction_bound") {
        if (f.empty() || f.size() == g.order() || g.trivial())
            return detail::not_applicable_report(f, check_name);
        return check_special_direction_bound(f);
    }
    if (check_name == "cosine_sum") return check_cosine_sum(f, constants);
    if (check_name == "edge_coset_density") {
        auto r = check_edge_coset_density(f, constants);
        return r;
    }
    if (check_name == "density_global") return check_density_bounds(f, constants)[0];
    if (check_name == "density_type3") return check_density_bounds(f, constants)[1];
    if (check_name == "density_empirical") return check_density_bounds(f, constants)[2];

    if (char_spec.empty()) return detail::not_applicable_report(f, check_name);
    Character c = parse_character_spec(g, char_spec);
    CosetProfile p = coset_profile(f, c);
    Rational delta = schur_count_bruteforce(f).density;
    auto kv = parse_params(params);
    if (check_name == "triple_lower_bound") {
        std::uint64_t l = detail::parse_u64(kv.at("l"), "l");
        std::uint64_t j = detail::parse_u64(kv.at("j"), "j");
        return check_triple_lower_bound(f, p, l, j);
    }
    if (check_name == "coset_pair_bound") {
        for (auto& r : check_coset_pair_bound(f, p, delta))
            if (r.context.params == params) return r;
        throw std::invalid_argument("coset_pair_bound instance not found for " + params);
    }
    if (check_name == "heavy_index_mass")
        return check_heavy_index_mass(f, p, parse_rational(kv.at("t")), delta);
    if (check_name == "middle_sum") return check_middle_sum(f, p, delta);
    throw std::invalid_argument("unknown check name: " + check_name);
}

inline BoundReport replay_report(const BoundReport& row, const ConstantsConfig& constants = {}) {
    return replay_report(row.check_name, row.context.group, row.context.subset,
                         row.context.character, row.context.params, constants);
}

}  // namespace sumfree
