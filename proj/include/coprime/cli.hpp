#pragma once

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "coprime/bounds.hpp"
#include "coprime/constants.hpp"
#include "coprime/counting.hpp"
#include "coprime/errors.hpp"
#include "coprime/verify.hpp"

namespace coprime::cli {

// Exit codes: 0 success, 1 assertion failure, 2 usage error, 3 resource or
// budget error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitResource = 3;

struct RunConfig {
    // global
    std::uint64_t table_limit = 1'000'000;
    unsigned threads = 0;
    unsigned max_k = 16;

    // count
    std::string family = "A";
    unsigned k = 1;
    std::uint64_t n = 0;
    std::optional<std::uint64_t> d;
    std::string method;
    std::uint64_t oracle_budget = 10'000'000;
    std::uint64_t fast_budget = 3000;

    // constants / table
    std::string kind = "C";
    double width = 1e-5;
    std::uint64_t max_cutoff = 400'000'000;
    bool reproduce_table = false;

    // verify
    std::string suite;
    std::optional<std::uint64_t> pmax, kmax, nmax, dmax;

    // sweep
    std::uint64_t n_from = 0, n_to = 0, step = 1;

    // output
    std::string format = "json";
    std::string output_path;
};

namespace detail {

inline std::string real17(const Real& x) { return x.str(17); }

inline void write_csv_header(std::ostream& out) {
    out << "family,k,n,exact,main_term,abs_error,rel_error,bound_rhs,bound_applicable,"
           "bound_satisfied\n";
}

inline void write_csv_row(std::ostream& out, const EstimateReport& rep) {
    out << rep.family << ',' << rep.k << ',' << rep.n << ','
        << (rep.exact ? to_decimal(*rep.exact) : std::string()) << ',' << real17(rep.main_point)
        << ',' << (rep.abs_error ? real17(*rep.abs_error) : std::string()) << ','
        << (rep.rel_error ? real17(*rep.rel_error) : std::string()) << ','
        << real17(rep.bound_rhs_point) << ',' << (rep.bound_applicable ? "true" : "false") << ','
        << (rep.bound_satisfied ? (*rep.bound_satisfied ? "true" : "false") : std::string())
        << '\n';
}

inline void write_report_json(std::ostream& out, const EstimateReport& rep) {
    out << "{\"family\":\"" << rep.family << "\",\"k\":" << rep.k << ",\"n\":" << rep.n
        << ",\"exact\":" << (rep.exact ? "\"" + to_decimal(*rep.exact) + "\"" : "null")
        << ",\"main_term\":" << real17(rep.main_point)
        << ",\"abs_error\":" << (rep.abs_error ? real17(*rep.abs_error) : "null")
        << ",\"rel_error\":" << (rep.rel_error ? real17(*rep.rel_error) : "null")
        << ",\"bound_rhs\":" << real17(rep.bound_rhs_point)
        << ",\"bound_applicable\":" << (rep.bound_applicable ? "true" : "false")
        << ",\"bound_satisfied\":"
        << (rep.bound_satisfied ? (*rep.bound_satisfied ? "true" : "false") : "null") << "}\n";
}

inline void write_enclosure_json(std::ostream& out, const ConstantEnclosure& enc) {
    out << "{\"kind\":\"" << euler_kind_letter(enc.kind) << "\",\"k\":" << enc.k
        << ",\"point\":" << real17(enc.point) << ",\"lo\":" << real17(enc.lo)
        << ",\"hi\":" << real17(enc.hi) << ",\"cutoff_P\":" << enc.cutoff
        << ",\"width\":" << real17(enc.width()) << "}\n";
}

inline int run_count(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    CountBudget budget;
    budget.max_enumerated = cfg.oracle_budget;
    budget.max_fast_n = cfg.fast_budget;

    const bool needs_d = cfg.family == "Kd" || cfg.family == "Bd";
    if (needs_d && !cfg.d) {
        err << "count: --family " << cfg.family << " requires -d\n";
        return kExitUsage;
    }
    if (!needs_d && cfg.d) {
        err << "count: -d is only valid with --family Kd or Bd\n";
        return kExitUsage;
    }

    std::string method = cfg.method;
    if (method.empty()) {
        if (cfg.family == "A") method = "moebius";
        else if (cfg.family == "B" || cfg.family == "Bd") method = "oracle";
        else if (cfg.family == "Kd") method = "dp";
        else method = "closed";
    }

    auto table = [&]() -> FactorTable {
        std::uint64_t limit = std::max<std::uint64_t>(cfg.table_limit, 2);
        limit = std::max(limit, cfg.n + 1);
        if (cfg.d) limit = std::max(limit, *cfg.d + 1);
        return FactorTable(limit);
    };

    ExactCount value;
    try {
        if (cfg.family == "A") {
            if (method == "oracle") value = count_head_coprime_oracle(cfg.k, cfg.n, budget);
            else if (method == "moebius")
                value = count_head_coprime_moebius(cfg.k, cfg.n, table(), budget, cfg.threads);
            else if (method == "perhead")
                value = count_head_coprime_per_head(cfg.k, cfg.n, table(), budget, cfg.threads);
            else {
                err << "count: --method " << method << " is not valid for family A\n";
                return kExitUsage;
            }
        } else if (cfg.family == "B") {
            if (method != "oracle") {
                err << "count: --method " << method << " is not valid for family B\n";
                return kExitUsage;
            }
            value = count_pairwise_coprime_oracle(cfg.k, cfg.n, budget);
        } else if (cfg.family == "K") {
            if (method != "closed") {
                err << "count: --method " << method << " is not valid for family K\n";
                return kExitUsage;
            }
            value = count_compositions(cfg.k, cfg.n);
        } else if (cfg.family == "U") {
            if (method != "closed") {
                err << "count: --method " << method << " is not valid for family U\n";
                return kExitUsage;
            }
            value = count_weak_compositions(cfg.k, cfg.n);
        } else if (cfg.family == "Kd") {
            if (method == "dp") value = count_shared_divisor_dp(cfg.k, *cfg.d, cfg.n, table());
            else if (method == "oracle")
                value = count_shared_divisor_oracle(cfg.k, *cfg.d, cfg.n, table(), budget);
            else {
                err << "count: --method " << method << " is not valid for family Kd\n";
                return kExitUsage;
            }
        } else {  // Bd
            if (method != "oracle") {
                err << "count: --method " << method << " is not valid for family Bd\n";
                return kExitUsage;
            }
            value = count_pairwise_coprime_at_d_oracle(cfg.k, *cfg.d, cfg.n, table(), budget);
        }
    } catch (const ArgumentError& e) {
        err << "count: " << e.what() << "\n";
        return kExitUsage;
    }

    if (cfg.format == "plain") {
        out << to_decimal(value) << "\n";
    } else {
        out << "{\"family\":\"" << cfg.family << "\",\"k\":" << cfg.k << ",\"n\":" << cfg.n
            << ",\"d\":" << (cfg.d ? std::to_string(*cfg.d) : "null") << ",\"method\":\"" << method
            << "\",\"value\":\"" << to_decimal(value) << "\"}\n";
    }
    return kExitOk;
}

inline int reproduce_reference_table(const RunConfig& cfg, std::ostream& out) {
    bool all_pass = true;
    for (const auto& ref : constant_references()) {
        ConstantEnclosure enc;
        bool width_ok = true;
        try {
            enc = euler_constant(ref.kind, ref.k, std::max(cfg.width, 1.5e-5), cfg.max_cutoff,
                                 cfg.threads);
        } catch (const WidthUnreachableError& e) {
            enc = e.achieved;
            width_ok = false;
        }
        const bool pass = width_ok && reference_entry_passes(enc, ref);
        all_pass = all_pass && pass;
        if (cfg.format == "json") {
            out << "{\"kind\":\"" << euler_kind_letter(ref.kind) << "\",\"k\":" << ref.k
                << ",\"point\":" << real17(enc.point) << ",\"lo\":" << real17(enc.lo)
                << ",\"hi\":" << real17(enc.hi) << ",\"cutoff_P\":" << enc.cutoff
                << ",\"width\":" << real17(enc.width()) << ",\"reference\":" << ref.value
                << ",\"pass\":" << (pass ? "true" : "false") << "}\n";
        } else {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.5f", ref.value);
            out << euler_kind_letter(ref.kind) << "_" << ref.k << ": point " << enc.point.str(10)
                << " enclosure [" << enc.lo.str(10) << ", " << enc.hi.str(10) << "] width "
                << enc.width().str(3) << " cutoff " << enc.cutoff << " reference " << buf << " "
                << (pass ? "PASS" : "FAIL") << "\n";
        }
    }
    return all_pass ? kExitOk : kExitAssertion;
}

inline int run_constants(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.reproduce_table) return reproduce_reference_table(cfg, out);

    const EulerKind kind = cfg.kind == "C" ? EulerKind::HeadCoprime : EulerKind::PairwiseCoprime;
    try {
        const ConstantEnclosure enc =
            euler_constant(kind, cfg.k, cfg.width, cfg.max_cutoff, cfg.threads);
        if (cfg.format == "plain")
            out << euler_kind_letter(kind) << "_" << cfg.k << " = " << enc.point.str(17) << " in ["
                << enc.lo.str(17) << ", " << enc.hi.str(17) << "], width " << enc.width().str(3)
                << ", cutoff " << enc.cutoff << "\n";
        else
            write_enclosure_json(out, enc);
        return kExitOk;
    } catch (const WidthUnreachableError& e) {
        err << "constants: " << e.what() << "\n";
        if (cfg.format == "plain")
            out << euler_kind_letter(kind) << "_" << cfg.k << " (partial) in ["
                << e.achieved.lo.str(17) << ", " << e.achieved.hi.str(17) << "], width "
                << e.achieved.width().str(3) << ", cutoff " << e.achieved.cutoff << "\n";
        else
            write_enclosure_json(out, e.achieved);
        return kExitResource;
    }
}

inline int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    VerifyResult result;
    const auto pick = [](const std::optional<std::uint64_t>& v, std::uint64_t fallback) {
        return v ? *v : fallback;
    };
    if (cfg.suite == "lemma32") {
        result = verify_congruence_counts(static_cast<std::uint32_t>(pick(cfg.pmax, 13)),
                                          static_cast<unsigned>(pick(cfg.kmax, 5)));
    } else if (cfg.suite == "identities") {
        result = verify_family_identities(static_cast<unsigned>(pick(cfg.kmax, 10)),
                                          pick(cfg.nmax, 60), pick(cfg.pmax, 1000),
                                          std::max<std::uint64_t>(pick(cfg.pmax, 1000), 100'000));
    } else if (cfg.suite == "theta-xi") {
        FactorTable table(std::max<std::uint64_t>(cfg.table_limit, 1000));
        result = verify_local_products(table, static_cast<unsigned>(pick(cfg.kmax, 4)),
                                       pick(cfg.dmax, 30), pick(cfg.nmax, 40));
    } else if (cfg.suite == "prop42") {
        FactorTable table(std::max<std::uint64_t>(cfg.table_limit, 1000));
        result = verify_shared_divisor_estimate(table, static_cast<unsigned>(pick(cfg.kmax, 4)),
                                                pick(cfg.dmax, 30), pick(cfg.nmax, 40));
    } else if (cfg.suite == "prop53") {
        FactorTable table(std::max<std::uint64_t>(cfg.table_limit, 1000));
        result = verify_pairwise_estimate(table, pick(cfg.dmax, 10), pick(cfg.nmax, 30));
    } else if (cfg.suite == "thm1") {
        FactorTable table(std::max<std::uint64_t>(cfg.table_limit, 10'000));
        Estimator est(table, 1e-7, 1e-6, cfg.threads, cfg.max_cutoff);
        CountBudget budget;
        budget.max_fast_n = cfg.fast_budget;
        result = verify_head_estimate_bound(est, static_cast<unsigned>(pick(cfg.kmax, 4)),
                                            pick(cfg.nmax, 200), budget, cfg.threads);
    } else if (cfg.suite == "factors") {
        FactorTable table(std::max<std::uint64_t>(cfg.table_limit, 1'000'000));
        result = verify_correction_bounds(table, static_cast<unsigned>(pick(cfg.kmax, 10)),
                                          pick(cfg.nmax, 400));
    } else {
        err << "verify: unknown suite '" << cfg.suite << "'\n";
        return kExitUsage;
    }

    out << "verify " << result.name << ": " << result.checks << " checks, "
        << result.failures.size() << " failures\n";
    for (const auto& f : result.failures) out << "  FAIL " << f << "\n";
    return result.ok() ? kExitOk : kExitAssertion;
}

inline int run_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (cfg.family != "A" && cfg.family != "B") {
        err << "sweep: --family must be A or B\n";
        return kExitUsage;
    }
    std::vector<std::uint64_t> grid;
    if (cfg.step == 0) {
        err << "sweep: --step must be positive\n";
        return kExitUsage;
    }
    for (std::uint64_t n = cfg.n_from; n <= cfg.n_to && cfg.n_from > 0; n += cfg.step)
        grid.push_back(n);

    std::string method = cfg.method;
    if (method.empty()) method = cfg.family == "A" ? "moebius" : "oracle";
    CountMethod m;
    if (method == "moebius") m = CountMethod::MoebiusExact;
    else if (method == "perhead") m = CountMethod::PerHeadDp;
    else if (method == "oracle") m = CountMethod::Oracle;
    else {
        err << "sweep: unknown --method " << method << "\n";
        return kExitUsage;
    }

    CountBudget budget;
    budget.max_enumerated = cfg.oracle_budget;
    budget.max_fast_n = cfg.fast_budget;

    std::ofstream file;
    std::ostream* sink = &out;
    if (!cfg.output_path.empty()) {
        file.open(cfg.output_path);
        if (!file) {
            err << "sweep: cannot open output file " << cfg.output_path << "\n";
            return kExitUsage;
        }
        sink = &file;
    }

    if (cfg.format == "csv") write_csv_header(*sink);
    if (grid.empty()) {
        sink->flush();
        return kExitOk;
    }

    const std::uint64_t n_max = grid.back();
    FactorTable table(std::max<std::uint64_t>(cfg.table_limit, n_max + 1));
    Estimator est(table, 1e-7, 1e-6, cfg.threads, cfg.max_cutoff);
    const auto reports = est.trend_sweep(cfg.family[0], cfg.k, grid, m, budget);
    for (const auto& rep : reports) {
        if (cfg.format == "csv") write_csv_row(*sink, rep);
        else if (cfg.format == "json") write_report_json(*sink, rep);
        else
            *sink << rep.family << " k=" << rep.k << " n=" << rep.n << " exact="
                  << (rep.exact ? to_decimal(*rep.exact) : "?") << " main="
                  << rep.main_point.str(10)
                  << " rel=" << (rep.rel_error ? rep.rel_error->str(5) : std::string("-")) << "\n";
        sink->flush();
    }
    return kExitOk;
}

}  // namespace detail

// Parses and runs one CLI invocation. Streams results to `out`, diagnostics
// to `err`; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"exact counting of coprime-constrained compositions, asymptotic main terms, "
                 "and Euler-product constants with rigorous enclosures"};
    app.require_subcommand(1);
    app.set_config("--config");
    app.add_option("--table-limit", cfg.table_limit, "factor table limit")
        ->envname("COPRIME_TABLE_LIMIT");
    app.add_option("--threads", cfg.threads, "worker thread count (0 = hardware)");
    app.add_option("--max-k", cfg.max_k, "largest accepted k");

    for (auto* sub : {app.add_subcommand("count", "exact composition counts"),
                      app.add_subcommand("constants", "Euler-product constant enclosures"),
                      app.add_subcommand("table", "reference-table reproduction"),
                      app.add_subcommand("verify", "invariant suites"),
                      app.add_subcommand("sweep", "estimate reports over a grid")})
        sub->fallthrough();

    auto* count = app.get_subcommand("count");
    count->add_option("--family", cfg.family, "family: A, B, K, U, Kd, Bd")
        ->required()
        ->check(CLI::IsMember({"A", "B", "K", "U", "Kd", "Bd"}));
    count->add_option("-k,--k", cfg.k, "number of constrained parts")->required();
    count->add_option("-n,--n", cfg.n, "composition target")->required();
    std::uint64_t d_value = 0;
    auto* d_opt = count->add_option("-d,--d", d_value, "square-free divisor (Kd/Bd)");
    count->add_option("--method", cfg.method, "oracle|moebius|perhead|dp|closed");
    count->add_option("--budget", cfg.oracle_budget, "oracle enumeration budget");
    count->add_option("--fast-budget", cfg.fast_budget, "fast-path n ceiling");
    count->add_option("--format", cfg.format, "json|plain")
        ->check(CLI::IsMember({"json", "plain"}));

    auto* constants = app.get_subcommand("constants");
    constants->add_option("--kind", cfg.kind, "C (head-coprime) or D (pairwise)")
        ->check(CLI::IsMember({"C", "D"}));
    constants->add_option("-k,--k", cfg.k, "order");
    constants->add_option("--width", cfg.width, "target enclosure width");
    constants->add_option("--max-cutoff", cfg.max_cutoff, "largest prime cutoff");
    constants->add_flag("--reproduce-table1", cfg.reproduce_table,
                        "recompute all reference constants and report pass/fail");
    constants->add_option("--format", cfg.format, "json|plain")
        ->check(CLI::IsMember({"json", "plain"}));

    auto* table_cmd = app.get_subcommand("table");
    table_cmd->add_option("--width", cfg.width, "target enclosure width");
    table_cmd->add_option("--max-cutoff", cfg.max_cutoff, "largest prime cutoff");
    table_cmd->add_option("--format", cfg.format, "json|plain")
        ->check(CLI::IsMember({"json", "plain"}));

    auto* verify = app.get_subcommand("verify");
    verify->add_option("suite", cfg.suite,
                       "lemma32|identities|theta-xi|prop42|prop53|thm1|factors")
        ->required();
    std::uint64_t pmax = 0, kmax = 0, nmax = 0, dmax = 0;
    auto* pmax_opt = verify->add_option("--pmax", pmax, "largest prime");
    auto* kmax_opt = verify->add_option("--kmax", kmax, "largest k");
    auto* nmax_opt = verify->add_option("--nmax", nmax, "largest n");
    auto* dmax_opt = verify->add_option("--dmax", dmax, "largest d");
    verify->add_option("--fast-budget", cfg.fast_budget, "fast-path n ceiling");

    auto* sweep = app.get_subcommand("sweep");
    sweep->add_option("--family", cfg.family, "A or B")
        ->required()
        ->check(CLI::IsMember({"A", "B"}));
    sweep->add_option("-k,--k", cfg.k, "number of constrained parts")->required();
    sweep->add_option("--n-from", cfg.n_from, "grid start")->required();
    sweep->add_option("--n-to", cfg.n_to, "grid end (inclusive)")->required();
    sweep->add_option("--step", cfg.step, "grid step");
    sweep->add_option("--method", cfg.method, "moebius|perhead|oracle");
    sweep->add_option("--budget", cfg.oracle_budget, "oracle enumeration budget");
    sweep->add_option("--fast-budget", cfg.fast_budget, "fast-path n ceiling");
    sweep->add_option("--format", cfg.format, "csv|json|plain")
        ->check(CLI::IsMember({"csv", "json", "plain"}));
    sweep->add_option("--output", cfg.output_path, "write rows to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.get_name() << ": " << e.what() << "\n";
        return kExitUsage;
    }

    if (*d_opt) cfg.d = d_value;
    if (*pmax_opt) cfg.pmax = pmax;
    if (*kmax_opt) cfg.kmax = kmax;
    if (*nmax_opt) cfg.nmax = nmax;
    if (*dmax_opt) cfg.dmax = dmax;
    if (sweep->parsed() && cfg.format == "json" && sweep->get_option("--format")->count() == 0)
        cfg.format = "csv";

    if ((count->parsed() || constants->parsed() || sweep->parsed()) && cfg.k > cfg.max_k) {
        err << "error: -k " << cfg.k << " exceeds --max-k " << cfg.max_k << "\n";
        return kExitUsage;
    }

    try {
        if (count->parsed()) return detail::run_count(cfg, out, err);
        if (constants->parsed()) return detail::run_constants(cfg, out, err);
        if (table_cmd->parsed()) {
            cfg.reproduce_table = true;
            return detail::reproduce_reference_table(cfg, out);
        }
        if (verify->parsed()) return detail::run_verify(cfg, out, err);
        if (sweep->parsed()) return detail::run_sweep(cfg, out, err);
    } catch (const BudgetError& e) {
        err << "error: " << e.what() << "\n";
        return kExitResource;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitAssertion;
    }
    err << "error: no subcommand selected\n";
    return kExitUsage;
}

}  // namespace coprime::cli
