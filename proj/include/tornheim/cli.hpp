#ifndef TORNHEIM_CLI_HPP
#define TORNHEIM_CLI_HPP

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "algebra.hpp"
#include "decomposer.hpp"
#include "evaluator.hpp"
#include "fixtures.hpp"
#include "serialization.hpp"
#include "verifier.hpp"

#ifndef TORNHEIM_DEFAULT_FIXTURES
#define TORNHEIM_DEFAULT_FIXTURES "data/r_series.fixtures"
#endif

namespace tornheim::cli {

/// Exit codes: 0 success, 1 verification failure, 2 bad arguments or input.
enum ExitCode : int { ok = 0, verification_failed = 1, usage_error = 2 };

namespace detail {

inline std::string format_result(const ValueWithError& v) {
    char buf[96];
    const auto z = v.value();
    if (z.imag() == 0.0) {
        std::snprintf(buf, sizeof buf, "%.10f ± %.1e", z.real(), v.error_bound());
    } else {
        std::snprintf(buf, sizeof buf, "%.10f%+.10fi ± %.1e", z.real(), z.imag(), v.error_bound());
    }
    return buf;
}

inline nlohmann::json result_json(const ValueWithError& v) {
    return {{"re", v.value().real()}, {"im", v.value().imag()}, {"bound", v.error_bound()}};
}

inline std::vector<std::int64_t> parse_orders(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t pos = 0;
        long long v = 0;
        try {
            v = std::stoll(item, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("--orders expects a comma-separated list of positive integers");
        }
        if (pos != item.size() || v < 1) {
            throw std::invalid_argument("--orders expects a comma-separated list of positive integers");
        }
        out.push_back(v);
    }
    if (out.empty()) {
        throw std::invalid_argument("--orders expects a comma-separated list of positive integers");
    }
    return out;
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open " + path);
    }
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

struct SeriesArgs {
    int p = 0;
    int q = 0;
    int r = 0;
    std::string alpha = "1/2";
    std::string beta = "0/1";

    void attach(CLI::App& app, bool required = true) {
        auto* op = app.add_option("--p", p, "exponent of m");
        auto* oq = app.add_option("--q", q, "exponent of n");
        auto* orr = app.add_option("--r", r, "exponent of m+n");
        if (required) {
            op->required();
            oq->required();
            orr->required();
        }
        app.add_option("--alpha", alpha, "color of n, as k/N (default 1/2, i.e. -1)");
        app.add_option("--beta", beta, "color of m+n, as k/N (default 0/1, i.e. 1)");
    }

    MTIndex index() const { return {p, q, r}; }
    RootOfUnity alpha_root() const { return parse_root(alpha); }
    RootOfUnity beta_root() const { return parse_root(beta); }
};

} // namespace detail

/// Runs one command line; argv[0] is the program name.
inline int run(const std::vector<std::string>& argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Colored Tornheim double series: decomposition into double polylogarithms, evaluation, and "
                 "verification"};
    app.require_subcommand(1);

    detail::SeriesArgs dec_args;
    std::string notation = "li";
    std::string dec_format = "text";
    auto* decompose_cmd = app.add_subcommand("decompose", "print the decomposition into Li terms");
    dec_args.attach(*decompose_cmd);
    decompose_cmd->add_option("--notation", notation, "li, bar or pretty")
        ->check(CLI::IsMember({"li", "bar", "pretty"}));
    decompose_cmd->add_option("--format", dec_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    detail::SeriesArgs eval_args;
    double eval_tol = 1e-10;
    std::string eval_input;
    std::string eval_format = "text";
    auto* eval_cmd = app.add_subcommand("eval", "evaluate through the decomposition");
    eval_args.attach(*eval_cmd, false);
    eval_cmd->add_option("--tol", eval_tol, "requested absolute error");
    eval_cmd->add_option("--input", eval_input, "evaluate a decomposition record written by decompose --format json");
    eval_cmd->add_option("--format", eval_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    detail::SeriesArgs oracle_args;
    std::int64_t cutoff = 20000;
    std::string oracle_format = "text";
    auto* oracle_cmd = app.add_subcommand("oracle", "evaluate the defining double series directly");
    oracle_args.attach(*oracle_cmd);
    oracle_cmd->add_option("--cutoff", cutoff, "sum all m+n <= cutoff");
    oracle_cmd->add_option("--format", oracle_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::string fixtures_path = TORNHEIM_DEFAULT_FIXTURES;
    int grid_weight = 7;
    std::string orders_text = "1,2,3,4";
    double verify_tol = 1e-10;
    std::int64_t verify_cutoff = 20000;
    unsigned threads = 1;
    std::string verify_format = "text";
    auto* verify_cmd = app.add_subcommand("verify", "run fixtures, the oracle grid and the R(2,1,2) checks");
    verify_cmd->add_option("--fixtures", fixtures_path, "fixture file");
    verify_cmd->add_option("--grid-weight", grid_weight, "largest p+q+r in the grid");
    verify_cmd->add_option("--orders", orders_text, "root orders for the colors, e.g. 1,2,3,4");
    verify_cmd->add_option("--tol", verify_tol, "requested absolute error of the decomposition");
    verify_cmd->add_option("--cutoff", verify_cutoff, "oracle cutoff");
    verify_cmd->add_option("--threads", threads, "worker threads for the grid");
    verify_cmd->add_option("--format", verify_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::string relation_path;
    double relation_tol = 1e-10;
    std::string relation_format = "text";
    auto* relation_cmd = app.add_subcommand("relation", "check numeric relations listed in a file");
    relation_cmd->add_option("--file", relation_path, "relation file")->required();
    relation_cmd->add_option("--tol", relation_tol, "requested absolute error");
    relation_cmd->add_option("--format", relation_format, "text or json")->check(CLI::IsMember({"text", "json"}));

    std::vector<const char*> raw;
    raw.reserve(argv.size());
    for (const auto& a : argv) {
        raw.push_back(a.c_str());
    }
    try {
        app.parse(static_cast<int>(raw.size()), raw.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }

    try {
        if (decompose_cmd->parsed()) {
            const auto d = decompose(dec_args.index(), dec_args.alpha_root(), dec_args.beta_root());
            std::string text;
            if (notation == "li") {
                text = to_string(d);
            } else if (notation == "bar") {
                text = to_string(to_level2(d));
            } else {
                text = to_pretty_string(to_level2(d));
            }
            if (dec_format == "json") {
                auto j = to_json(d);
                j["text"] = text;
                out << j.dump() << "\n";
            } else {
                out << text << "\n";
            }
            return ok;
        }

        if (eval_cmd->parsed()) {
            EvalConfig cfg;
            cfg.tolerance = eval_tol;
            cfg.validate();
            const bool from_file = !eval_input.empty();
            if (!from_file && (eval_cmd->count("--p") == 0 || eval_cmd->count("--q") == 0 ||
                               eval_cmd->count("--r") == 0)) {
                throw std::invalid_argument("eval needs --p, --q and --r, or --input");
            }
            const Decomposition d = from_file ? decomposition_from_json(detail::read_json_file(eval_input))
                                              : decompose(eval_args.index(), eval_args.alpha_root(),
                                                          eval_args.beta_root());
            const auto v = eval_decomposition(d, cfg);
            if (eval_format == "json") {
                out << detail::result_json(v).dump() << "\n";
            } else {
                out << detail::format_result(v) << "\n";
            }
            return ok;
        }

        if (oracle_cmd->parsed()) {
            EvalConfig cfg;
            cfg.oracle_cutoff = cutoff;
            cfg.validate();
            const auto v = eval_mt_direct(oracle_args.index(), oracle_args.alpha_root(), oracle_args.beta_root(), cfg);
            if (oracle_format == "json") {
                out << detail::result_json(v).dump() << "\n";
            } else {
                out << detail::format_result(v) << "\n";
            }
            return ok;
        }

        if (verify_cmd->parsed()) {
            EvalConfig cfg;
            cfg.tolerance = verify_tol;
            cfg.oracle_cutoff = verify_cutoff;
            cfg.validate();
            const auto orders = detail::parse_orders(orders_text);
            if (grid_weight < 3) {
                throw std::invalid_argument("grid-weight>=3 required");
            }
            const auto fixtures = verify_fixtures(load_fixtures(fixtures_path));
            const auto grid = cross_check_grid(grid_weight, orders, cfg, threads);
            const auto r212 = verify_r212(cfg);
            const std::size_t failures = count_failures(fixtures) + count_failures(grid) + (r212.passed ? 0 : 1);

            if (verify_format == "json") {
                nlohmann::json j = {{"fixtures", to_json(fixtures)},
                                    {"grid", to_json(grid)},
                                    {"r212", to_json(r212)},
                                    {"failures", failures}};
                out << j.dump(2) << "\n";
            } else {
                out << "== fixtures (" << fixtures.size() << ")\n" << format_table(fixtures);
                std::vector<Report> grid_failures;
                double worst = 0.0;
                for (const auto& g : grid) {
                    if (!g.passed) {
                        grid_failures.push_back(g);
                    }
                    if (g.bound > 0.0) {
                        worst = std::max(worst, g.absdiff / g.bound);
                    }
                }
                out << "== grid: " << grid.size() << " cases, " << grid_failures.size()
                    << " failed, largest |diff|/bound = " << format_number(worst, 3) << "\n"
                    << format_table(grid_failures);
                out << "== R(2,1,2)\n" << format_table({r212});
                out << (failures == 0 ? "all checks passed" : std::to_string(failures) + " check(s) failed") << "\n";
            }
            return failures == 0 ? ok : verification_failed;
        }

        if (relation_cmd->parsed()) {
            EvalConfig cfg;
            cfg.tolerance = relation_tol;
            cfg.validate();
            std::vector<Report> reports;
            for (const auto& spec : load_relations(relation_path)) {
                reports.push_back(check_relation(spec, cfg));
            }
            if (relation_format == "json") {
                out << to_json(reports).dump(2) << "\n";
            } else {
                out << format_table(reports);
            }
            return count_failures(reports) == 0 ? ok : verification_failed;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage_error;
    }
    return usage_error;
}

} // namespace tornheim::cli

#endif // TORNHEIM_CLI_HPP
