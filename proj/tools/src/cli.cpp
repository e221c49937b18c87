#include "turlab_cli/cli.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "turlab/minimal_distribution.hpp"
#include "turlab/minimality_search.hpp"
#include "turlab/special_functions.hpp"
#include "turlab/swap_engine.hpp"
#include "turlab_cli/grid.hpp"
#include "turlab_cli/json_io.hpp"

namespace turlab::cli {

namespace {

/// Log-ratio tolerance used when `check` validates the fluctuation theorem.
constexpr double kFtLogTolerance = 1e-9;

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string_view sign_name(SignConditionStatus s)
{
    switch (s) {
    case SignConditionStatus::holds:
        return "holds";
    case SignConditionStatus::fails:
        return "fails";
    case SignConditionStatus::indeterminate:
        break;
    }
    return "indeterminate";
}

/// Sends text to --output when given, otherwise to `out`.
void emit(const std::string& text, const std::string& output, std::ostream& out)
{
    if (output.empty() || output == "-") {
        out << text;
        return;
    }
    std::ofstream file(output, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError("cannot open '" + output + "' for writing");
    }
    file << text;
    file.flush();
    if (!file) {
        throw IoError("write to '" + output + "' failed");
    }
}

struct Options {
    std::string input;
    std::string output;
    double tol = kDefaultBoundTolerance;
    std::string grid;
    double beta_ratio = 0.5;
    double beta_b_eps_a = 2.0;
    double mean_sigma = 0.0;
    double mean_z = 0.0;
    std::uint64_t seed = MinSearchOptions{}.seed;
    std::size_t pairs = MinSearchOptions{}.support_pairs;
    std::size_t starts = MinSearchOptions{}.starts;
};

int cmd_check(const Options& o, std::ostream& out)
{
    const FtDistribution d = load_distribution(o.input);
    check_structure(d);
    const FtValidation ft = validate_ft(d, kFtLogTolerance);
    const MomentReport m = moments(d);
    const BoundVerdict v = evaluate_bounds(m, o.tol);

    const bool ok = ft.passed && v.theorem_bounds_hold();
    nlohmann::json doc = to_json(v);
    doc["status"] = ok ? "pass" : "bound_fail";
    const nlohmann::json mj = to_json(m);
    doc["mean"] = mj["mean"];
    doc["covariance"] = mj["covariance"];
    doc["mean_sigma"] = mj["mean_sigma"];
    doc["ft_validation"] = {{"passed", ft.passed},
                            {"log_tolerance", kFtLogTolerance},
                            {"max_log_deviation", std::isfinite(ft.max_log_deviation)
                                                      ? nlohmann::json(ft.max_log_deviation)
                                                      : nlohmann::json(nullptr)},
                            {"undefined_ratios", ft.undefined_ratios}};
    emit(dump(doc), o.output, out);
    return ok ? exit_pass : exit_bound_fail;
}

int cmd_sweep(const Options& o, std::ostream& out)
{
    SweepConfig cfg;
    cfg.beta_ratio = o.beta_ratio;
    cfg.beta_b_eps_a = o.beta_b_eps_a;
    cfg.grid = expand(parse_grid(o.grid));
    const auto rows = sweep(cfg);

    std::string csv = "r,regime,mean_qh,mean_w,mean_sigma,var_qh,var_w,cov_wq,f_bound_qh,"
                      "f_bound_w,classical_bound_qh,classical_bound_w,cov_lower,cov_upper,"
                      "sign_condition\n";
    for (const auto& r : rows) {
        csv += fmt(r.r);
        csv += ',';
        csv += to_string(r.regime);
        for (double v : {r.mean_qh, r.mean_w, r.mean_sigma, r.var_qh, r.var_w, r.cov_wq,
                         r.f_bound_qh, r.f_bound_w, r.classical_bound_qh, r.classical_bound_w,
                         r.cov_lower, r.cov_upper}) {
            csv += ',';
            csv += fmt(v);
        }
        csv += ',';
        csv += sign_name(r.sign_condition);
        csv += '\n';
    }
    emit(csv, o.output, out);
    return exit_pass;
}

int cmd_minimal(const Options& o, std::ostream& out)
{
    const MinimalDistribution d = build_minimal(o.mean_sigma, o.mean_z);
    emit(dump(to_json(d.to_ft_distribution())), o.output, out);
    return exit_pass;
}

int cmd_bound_table(const Options& o, std::ostream& out)
{
    const auto xs = expand(parse_grid(o.grid));
    for (double x : xs) {
        if (!(x > 0.0)) {
            throw DomainError("bound-table: grid point " + fmt(x) + " is not positive");
        }
    }
    std::string csv = "x,f_bound,classical_bound,exponential_bound\n";
    for (double x : xs) {
        csv += fmt(x) + ',' + fmt(tur_bound(x)) + ',' + fmt(classical_bound(x)) + ',' +
               fmt(exponential_bound(x)) + '\n';
    }
    emit(csv, o.output, out);
    return exit_pass;
}

int cmd_min_search(const Options& o, std::ostream& out, std::ostream& err)
{
    MinSearchOptions opts;
    opts.seed = o.seed;
    opts.support_pairs = o.pairs;
    opts.starts = o.starts;
    const MinSearchResult r = numeric_min_search(o.mean_sigma, o.mean_z, opts);
    emit(dump(to_json(r.best)), o.output, out);

    char line[160];
    std::snprintf(line, sizeof line, "best_var=%.17g floor=%.17g gap=%.3e\n", r.best_variance,
                  r.floor, r.relative_gap);
    err << line;
    return r.relative_gap < -1e-9 ? exit_bound_fail : exit_pass;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"turlab: tight uncertainty relations from exchange fluctuation theorems"};
    app.require_subcommand(1);
    Options o;

    auto* check = app.add_subcommand("check", "Evaluate every bound on a distribution file");
    check->add_option("input", o.input, "Distribution JSON")->required();
    check->add_option("--tol", o.tol, "Bound tolerance")->check(CLI::PositiveNumber);
    check->add_option("--output", o.output, "Write the verdict here instead of stdout");

    auto* sweep_cmd = app.add_subcommand("sweep", "Tabulate the SWAP engine over eps_b/eps_a");
    o.grid = "0.05:2:200";
    sweep_cmd->add_option("--grid", o.grid, "start:stop:count[:log] over r = eps_b/eps_a")
        ->capture_default_str();
    sweep_cmd->add_option("--beta-ratio", o.beta_ratio, "beta_a/beta_b")->capture_default_str();
    sweep_cmd->add_option("--beta-b-eps-a", o.beta_b_eps_a, "beta_b * eps_a")
        ->capture_default_str();
    sweep_cmd->add_option("--output", o.output, "CSV path (default stdout)");

    auto* minimal = app.add_subcommand("minimal", "Write the variance-minimal distribution");
    minimal->add_option("--mean-sigma", o.mean_sigma, "<Sigma>")->required();
    minimal->add_option("--mean-z", o.mean_z, "<Z>")->required();
    minimal->add_option("--output", o.output, "JSON path (default stdout)");

    auto* table = app.add_subcommand("bound-table", "Tabulate f(x), 2/x and 2/(e^x-1)");
    std::string table_grid = "0.001:50:1000:log";
    table->add_option("--grid", table_grid, "start:stop:count[:log] over x")
        ->capture_default_str();
    table->add_option("--output", o.output, "CSV path (default stdout)");

    auto* search = app.add_subcommand("min-search", "Numerically minimize var(Z) over small supports");
    search->add_option("--mean-sigma", o.mean_sigma, "<Sigma>")->required();
    search->add_option("--mean-z", o.mean_z, "<Z>")->required();
    search->add_option("--seed", o.seed, "RNG seed for starting points")->capture_default_str();
    search->add_option("--pairs", o.pairs, "Mirror pairs in the support")
        ->check(CLI::Range(1, 3))
        ->capture_default_str();
    search->add_option("--starts", o.starts, "Number of starting points")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    search->add_option("--output", o.output, "JSON path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_pass : exit_structural;
    }

    try {
        if (*check) {
            return cmd_check(o, out);
        }
        if (*sweep_cmd) {
            return cmd_sweep(o, out);
        }
        if (*minimal) {
            return cmd_minimal(o, out);
        }
        if (*table) {
            o.grid = table_grid;
            return cmd_bound_table(o, out);
        }
        return cmd_min_search(o, out, err);
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return exit_io;
    } catch (const StructuralError& e) {
        err << "structural error: " << e.what() << '\n';
        return exit_structural;
    } catch (const InconsistencyError& e) {
        err << "inconsistent input: " << e.what() << '\n';
        return exit_structural;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_structural;
    }
}

} // namespace turlab::cli
