// sumfree-lab: command line front end for the sum-free set toolkit.
// Exit status: 0 success, 1 failed check or internal inconsistency,
// 2 bad usage or refused input.

#include "sumfree/sumfree.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

namespace {

using namespace sumfree;

int cmd_mu(const std::string& spec) {
    AbelianGroup g = parse_group_spec(spec);
    GroupType t = classify(g);
    Rational m = mu(g);
    std::cout << "group=" << g.spec() << " n=" << g.order() << " type=" << t.str()
              << " mu=" << format_rational(m) << " mu_decimal=" << format_double(to_double(m))
              << "\n";
    return 0;
}

int cmd_classify(const std::string& spec) {
    AbelianGroup g = parse_group_spec(spec);
    std::cout << "group=" << g.spec() << " n=" << g.order() << " exponent=" << g.exponent();
    if (g.trivial()) std::cout << " type=trivial";
    else std::cout << " type=" << classify(g).str();
    std::cout << "\n";
    return 0;
}

int cmd_census(const std::string& spec) {
    AbelianGroup g = parse_group_spec(spec);
    CensusRow row = census(g);
    std::cout << "group=" << row.group_spec << " n=" << row.order
              << " sf_count=" << row.sumfree_count << " sigma=" << format_double(row.sigma_value);
    if (row.mu_value) {
        std::cout << " mu=" << format_rational(*row.mu_value) << " sigma_minus_mu="
                  << format_double(row.sigma_value - to_double(*row.mu_value));
    }
    std::cout << "\n";
    return 0;
}

int cmd_maxsf(const std::string& spec) {
    AbelianGroup g = parse_group_spec(spec);
    MaxSumfree best = max_sumfree(g);
    std::cout << "group=" << g.spec() << " n=" << g.order() << " max_sumfree=" << best.size
              << " witness=";
    for (std::size_t i = 0; i < best.witness.size(); ++i) {
        if (i) std::cout << ',';
        std::cout << best.witness[i];
    }
    std::cout << "\n";
    return 0;
}

int cmd_schur(const std::string& spec, const std::string& subset_spec) {
    AbelianGroup g = parse_group_spec(spec);
    Subset f = parse_subset_spec(g, subset_spec);
    SchurStats brute = schur_count_bruteforce(f);
    SchurStats transform = schur_count_fourier(f);
    std::cout << "group=" << g.spec() << " subset=" << f.spec() << " size=" << f.size()
              << " triples_bruteforce=" << brute.triples
              << " triples_fourier=" << transform.triples
              << " delta=" << format_rational(brute.density)
              << " delta_decimal=" << format_double(to_double(brute.density)) << "\n";
    if (brute.triples != transform.triples) {
        std::cerr << "error: triple-count backends disagree\n";
        return 1;
    }
    return 0;
}

struct VerifyArgs {
    std::string config_path;
    SweepConfig cfg;
    bool has_max_order = false, has_samples = false, has_seed = false, has_checks = false,
         has_out = false, has_format = false, has_workers = false;
    std::uint64_t max_order = 12, samples = 0, seed = 0, workers = 1;
    std::string checks_list, out_path, format_name = "csv";
};

int cmd_verify(VerifyArgs& a) {
    SweepConfig cfg;
    if (!a.config_path.empty()) cfg = parse_config_file(a.config_path);
    if (a.has_max_order) cfg.max_order = a.max_order;
    if (a.has_samples) cfg.samples_per_group = a.samples;
    if (a.has_seed) cfg.rng_seed = a.seed;
    if (a.has_checks) cfg.checks = detail::split_list(a.checks_list);
    if (a.has_out) cfg.output_path = a.out_path;
    if (a.has_workers) cfg.workers = static_cast<unsigned>(a.workers);
    if (a.has_format) {
        if (a.format_name == "csv") cfg.format = ReportFormat::Csv;
        else if (a.format_name == "jsonl") cfg.format = ReportFormat::Jsonl;
        else throw CLI::ValidationError("--format must be csv or jsonl");
    }

    SweepResult res = run_sweep(cfg);
    if (cfg.output_path.empty()) {
        write_report_rows(std::cout, res.rows, cfg.format);
    } else {
        write_report_file(cfg.output_path, res.rows, cfg.format);
    }
    std::cerr << "verify: subsets=" << res.subsets_evaluated
              << " character_triples=" << res.character_triples << " rows=" << res.rows.size()
              << " hard_failures=" << res.hard_failures;
    if (!cfg.output_path.empty()) std::cerr << " report=" << cfg.output_path;
    std::cerr << "\n";
    return res.hard_failures == 0 ? 0 : 1;
}

int cmd_extremal(std::uint64_t q, std::uint64_t l, const std::string& cap_text,
                 const std::string& mass_text, bool oracle) {
    ExtremalCosineProblem prob;
    prob.q = q;
    prob.l = l;
    prob.cap = parse_rational(cap_text);
    prob.mass = parse_rational(mass_text);
    ExtremalSolution sol = minimize_weighted_cosine(prob);
    std::cout << "E=" << format_double(sol.value) << " weights=";
    bool first = true;
    for (std::uint64_t j = 0; j < prob.q; ++j) {
        if (sol.weights[j] == 0) continue;
        if (!first) std::cout << ';';
        first = false;
        std::cout << j << '=' << format_rational(sol.weights[j]);
    }
    if (first) std::cout << "none";
    std::cout << "\n";
    if (oracle) {
        double reference = minimize_weighted_cosine_bruteforce(prob);
        std::cout << "oracle=" << format_double(reference) << "\n";
        if (std::abs(reference - sol.value) > 1e-9) {
            std::cerr << "error: greedy optimum disagrees with oracle by "
                      << format_double(std::abs(reference - sol.value)) << "\n";
            return 1;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"sum-free set toolkit for finite abelian groups"};
    app.require_subcommand(1);

    std::string group_spec, subset_spec;

    auto* mu_cmd = app.add_subcommand("mu", "largest sum-free density of a group");
    mu_cmd->add_option("spec", group_spec, "invariant factors, e.g. 10 or 2,6")->required();

    auto* classify_cmd = app.add_subcommand("classify", "group type by prime residues mod 3");
    classify_cmd->add_option("spec", group_spec)->required();

    auto* census_cmd = app.add_subcommand("census", "count all sum-free subsets");
    census_cmd->add_option("spec", group_spec)->required();

    auto* maxsf_cmd = app.add_subcommand("maxsf", "largest sum-free subset with witness");
    maxsf_cmd->add_option("spec", group_spec)->required();

    auto* schur_cmd = app.add_subcommand("schur", "triple count of a subset, both backends");
    schur_cmd->add_option("spec", group_spec)->required();
    schur_cmd->add_option("subset", subset_spec, "rank list 1,2,3 or hex mask 0xE")
        ->required();

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "sweep inequality checks, write a report");
    auto* opt_max = verify_cmd->add_option("--max-order", va.max_order, "largest group order");
    auto* opt_samples =
        verify_cmd->add_option("--samples", va.samples, "random subsets per group above order 12");
    auto* opt_seed = verify_cmd->add_option("--seed", va.seed, "root random seed");
    auto* opt_checks =
        verify_cmd->add_option("--checks", va.checks_list, "comma list; default all");
    auto* opt_out = verify_cmd->add_option("--out", va.out_path, "report path; default stdout");
    auto* opt_format = verify_cmd->add_option("--format", va.format_name, "csv or jsonl");
    auto* opt_workers = verify_cmd->add_option("--workers", va.workers, "worker threads");
    verify_cmd->add_option("--config", va.config_path, "key = value file; flags override");

    std::uint64_t ex_q = 7, ex_l = 0;
    std::string ex_cap = "1", ex_mass = "0";
    bool ex_oracle = false;
    auto* extremal_cmd = app.add_subcommand("extremal", "minimize a capped cosine weight sum");
    extremal_cmd->add_option("--q", ex_q, "modulus")->required();
    extremal_cmd->add_option("--l", ex_l, "phase offset in [0, (q-1)/2]");
    extremal_cmd->add_option("--cap", ex_cap, "per-weight capacity, rational");
    extremal_cmd->add_option("--mass", ex_mass, "required total weight, rational");
    extremal_cmd->add_flag("--oracle", ex_oracle, "cross-check against brute force");

    CLI11_PARSE(app, argc, argv);

    try {
        if (mu_cmd->parsed()) return cmd_mu(group_spec);
        if (classify_cmd->parsed()) return cmd_classify(group_spec);
        if (census_cmd->parsed()) return cmd_census(group_spec);
        if (maxsf_cmd->parsed()) return cmd_maxsf(group_spec);
        if (schur_cmd->parsed()) return cmd_schur(group_spec, subset_spec);
        if (verify_cmd->parsed()) {
            va.has_max_order = opt_max->count() > 0;
            va.has_samples = opt_samples->count() > 0;
            va.has_seed = opt_seed->count() > 0;
            va.has_checks = opt_checks->count() > 0;
            va.has_out = opt_out->count() > 0;
            va.has_format = opt_format->count() > 0;
            va.has_workers = opt_workers->count() > 0;
            return cmd_verify(va);
        }
        if (extremal_cmd->parsed())
            return cmd_extremal(ex_q, ex_l, ex_cap, ex_mass, ex_oracle);
    } catch (const sumfree::consistency_error& e) {
        std::cerr << "consistency error: " << e.what() << "\n";
        return 1;
    } catch (const sumfree::limit_error& e) {
        std::cerr << "refused: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
