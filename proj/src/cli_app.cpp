#include "frbc/cli_app.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "frbc/io.hpp"
#include "frbc/thomas_fermi.hpp"

namespace frbc {

namespace {

struct CliConfig {
    int truncation = 50;
    std::string alpha = "0.5";
    std::string scale = "1";
    int iterations = 45;
    int digits = 50;
    std::string format = "csv";
    std::string out;
    bool serial = false;

    PrecisionContext context() const { return PrecisionContext(digits); }

    TfConfig tf(const PrecisionContext& ctx) const {
        TfConfig c = TfConfig::defaults(ctx);
        c.truncation = truncation;
        c.alpha = ctx.real(alpha);
        c.scale = ctx.real(scale);
        c.iterations = iterations;
        c.exec = serial ? Exec::serial : Exec::parallel;
        return c;
    }
};

void add_common_flags(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--alpha", cfg.alpha, "Fractional map exponent");
    cmd->add_option("--scale", cfg.scale, "Map scale factor L");
    cmd->add_option("--digits", cfg.digits, "Working significant decimal digits");
    cmd->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", cfg.out, "Output path (stdout when omitted)");
    cmd->add_flag("--serial", cfg.serial, "Disable OpenMP kernels");
}

void add_single_run_flags(CLI::App* cmd, CliConfig& cfg) {
    cmd->add_option("--n", cfg.truncation, "Basis truncation order N")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--iterations", cfg.iterations, "Quasilinearization iterations")
        ->check(CLI::PositiveNumber);
}

// Writes through a stringstream so a run either produces the whole
// artifact or nothing.
void emit(const std::string& out, const std::string& payload) {
    if (out.empty()) {
        std::cout << payload;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + out);
    f << payload;
}

int run_solve(const CliConfig& cfg) {
    const PrecisionContext ctx = cfg.context();
    const auto t0 = std::chrono::steady_clock::now();
    TfRun run = solve_thomas_fermi(cfg.tf(ctx), ctx);
    const auto t1 = std::chrono::steady_clock::now();
    const double ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    std::ostringstream payload;
    payload << run.solution.to_json().dump(2) << '\n';
    emit(cfg.out, payload.str());

    std::ostream& info = cfg.out.empty() ? std::cerr : std::cout;
    info << "slope " << ctx.str(run.solution.slope_at_origin()) << '\n';
    info << "max_node_residual "
         << ctx.str(run.trace.records.back().max_node_residual) << '\n';
    info << "wall_ms " << ms << '\n';
    return 0;
}

std::vector<Real> table_values(const SpectralSolution& sol, std::span<const Real> xs,
                               int order, Exec exec) {
    std::vector<Real> vals(xs.size(), sol.context().real(0));
    if (exec == Exec::parallel) {
        const long n = static_cast<long>(xs.size());
#pragma omp parallel for schedule(static)
        for (long i = 0; i < n; ++i) {
            vals[static_cast<std::size_t>(i)] = sol.eval(xs[static_cast<std::size_t>(i)], order);
        }
    } else {
        for (std::size_t i = 0; i < xs.size(); ++i) vals[i] = sol.eval(xs[i], order);
    }
    return vals;
}

int run_table(const CliConfig& cfg, const std::string& which, const std::string& x_list,
              const std::string& solution_path) {
    const int order = (which == "dy") ? 1 : 0;
    std::optional<SpectralSolution> sol;
    if (!solution_path.empty()) {
        std::ifstream f(solution_path);
        if (!f) throw std::runtime_error("cannot read solution file: " + solution_path);
        nlohmann::json j;
        f >> j;
        sol.emplace(SpectralSolution::from_json(j));
    } else {
        const PrecisionContext ctx = cfg.context();
        sol.emplace(solve_thomas_fermi(cfg.tf(ctx), ctx).solution);
    }
    const PrecisionContext& ctx = sol->context();
    const std::vector<Real> xs =
        x_list.empty() ? default_table_abscissas(ctx) : parse_x_list(x_list, ctx);
    for (const Real& x : xs) {
        if (x.sign() < 0) throw std::invalid_argument("table abscissas must be >= 0");
    }
    const std::vector<Real> vals =
        table_values(*sol, xs, order, cfg.serial ? Exec::serial : Exec::parallel);
    std::ostringstream payload;
    if (cfg.format == "json") {
        write_table_json(payload, xs, vals, ctx);
    } else {
        write_table_csv(payload, xs, vals, ctx);
    }
    emit(cfg.out, payload.str());
    return 0;
}

int run_convergence(const CliConfig& cfg, std::vector<int> truncations,
                    std::vector<int> iteration_list, const std::string& which,
                    const std::string& x_list) {
    const PrecisionContext ctx = cfg.context();
    if (truncations.empty()) truncations = {cfg.truncation};
    if (iteration_list.empty()) iteration_list = {15, 30, 45};
    const int order = (which == "dy") ? 1 : 0;
    std::vector<Real> xs;
    if (!x_list.empty()) {
        xs = parse_x_list(x_list, ctx);
    } else {
        if (order == 1) xs.push_back(ctx.real(0));
        for (int v : {10, 100, 200, 300, 400, 500}) xs.push_back(ctx.real(v));
    }
    int max_iter = 0;
    for (int it : iteration_list) max_iter = std::max(max_iter, it);

    std::vector<std::vector<std::vector<Real>>> values;
    for (int n : truncations) {
        TfConfig tf = cfg.tf(ctx);
        tf.truncation = n;
        tf.iterations = max_iter;
        const TfRun run = solve_thomas_fermi(tf, ctx);
        std::vector<std::vector<Real>> per_x(xs.size());
        for (std::size_t b = 0; b < xs.size(); ++b) {
            for (int it : iteration_list) {
                const SpectralSolution snap = solution_at_iteration(tf, run.trace, it, ctx);
                per_x[b].push_back(snap.eval(xs[b], order));
            }
        }
        values.push_back(std::move(per_x));
    }
    std::ostringstream payload;
    write_lattice_csv(payload, truncations, xs, iteration_list, values, ctx);
    emit(cfg.out, payload.str());
    return 0;
}

int run_residual_profile(const CliConfig& cfg, std::vector<int> truncations,
                         const std::string& range, int count) {
    const PrecisionContext ctx = cfg.context();
    if (truncations.empty()) truncations = {cfg.truncation};
    const std::vector<Real> probe = log_spaced_probe(range, count, ctx);
    std::vector<std::vector<Real>> series;
    for (int n : truncations) {
        TfConfig tf = cfg.tf(ctx);
        tf.truncation = n;
        const TfRun run = solve_thomas_fermi(tf, ctx);
        series.push_back(run.solution.residual_profile(probe, tf.exec));
    }
    std::ostringstream payload;
    write_profile_csv(payload, probe, series, truncations, ctx);
    emit(cfg.out, payload.str());
    return 0;
}

} // namespace

int cli_main(int argc, const char* const* argv) {
    CLI::App app{"Spectral Thomas-Fermi solver (fractional rational Bessel collocation)"};
    app.require_subcommand(1);

    CliConfig cfg;
    std::string which = "y";
    std::string x_list;
    std::string solution_path;
    std::vector<int> truncations;
    std::vector<int> iteration_list;
    std::string probe_range = "0.01:100";
    int probe_count = 100;

    CLI::App* solve = app.add_subcommand("solve", "Solve and persist the solution as JSON");
    add_common_flags(solve, cfg);
    add_single_run_flags(solve, cfg);

    CLI::App* table = app.add_subcommand("table", "Tabulate y or y' over abscissas");
    add_common_flags(table, cfg);
    add_single_run_flags(table, cfg);
    table->add_option("--which", which, "Quantity: y or dy")
        ->check(CLI::IsMember({"y", "dy"}));
    table->add_option("--x-list", x_list, "Comma-separated abscissas (default: the 52 reference points)");
    table->add_option("--solution", solution_path, "Reuse a solve artifact instead of solving");

    CLI::App* conv = app.add_subcommand("convergence", "Per-(N, iteration) value lattice");
    add_common_flags(conv, cfg);
    conv->add_option("--n", truncations, "Truncation orders (repeatable)");
    conv->add_option("--iterations", iteration_list, "Iteration snapshots (default 15 30 45)");
    conv->add_option("--which", which, "Quantity: y or dy")
        ->check(CLI::IsMember({"y", "dy"}));
    conv->add_option("--x-list", x_list, "Comma-separated abscissas");

    CLI::App* resid = app.add_subcommand("residual-profile",
                                         "Plot-ready |residual| over a log-spaced probe grid");
    add_common_flags(resid, cfg);
    resid->add_option("--n", truncations, "Truncation orders, one series each");
    resid->add_option("--iterations", cfg.iterations, "Quasilinearization iterations")
        ->check(CLI::PositiveNumber);
    resid->add_option("--probe-log-range", probe_range, "Probe range lo:hi (log spacing)");
    resid->add_option("--probe-count", probe_count, "Number of probe points");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (solve->parsed()) return run_solve(cfg);
        if (table->parsed()) return run_table(cfg, which, x_list, solution_path);
        if (conv->parsed()) return run_convergence(cfg, truncations, iteration_list, which, x_list);
        if (resid->parsed()) return run_residual_profile(cfg, truncations, probe_range, probe_count);
    } catch (const SingularMatrix& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NonFiniteCoefficient& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 64;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

} // namespace frbc
