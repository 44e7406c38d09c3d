#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsco/bench.hpp"
#include "tsco/chped.hpp"
#include "tsco/chped_io.hpp"
#include "tsco/reference.hpp"
#include "tsco/verify.hpp"

namespace {

struct SystemChoice {
    int case_id = 1;
    std::string system_file;

    [[nodiscard]] tsco::chped::ChpedSystem load() const
    {
        return system_file.empty() ? tsco::chped::build_case(case_id) : tsco::chped::load_system(system_file);
    }

    [[nodiscard]] std::optional<double> reference() const
    {
        if (!system_file.empty()) {
            return std::nullopt;
        }
        return case_id == 1 ? tsco::reference::case1_optimum_cost : tsco::reference::case2_best_cost;
    }
};

struct SolverOptions {
    int n_library = 150;
    int n_agents = 50;
    int iterations = 100;
    int tau_b = 2;
    int tau_w = 4;
    std::string mode = "acr";
    bool no_repair = false;

    [[nodiscard]] tsco::SolverConfig config() const
    {
        tsco::SolverConfig c;
        c.n_library = n_library;
        c.n_agents = n_agents;
        c.max_iterations = iterations;
        c.tournament_width = tau_b;
        c.refresh_width = tau_w;
        c.constraint_mode = tsco::parse_constraint_mode(mode);
        c.repair_balances = !no_repair;
        return c;
    }
};

void add_system_options(CLI::App* cmd, SystemChoice& sys)
{
    cmd->add_option("--case", sys.case_id, "Built-in benchmark case")->check(CLI::IsMember({1, 2}));
    cmd->add_option("--system", sys.system_file, "JSON system definition (overrides --case)")->check(CLI::ExistingFile);
}

void add_solver_options(CLI::App* cmd, SolverOptions& opt)
{
    cmd->add_option("--iters", opt.iterations, "Iterations T");
    cmd->add_option("--tau-b", opt.tau_b, "Tournament width for model selection");
    cmd->add_option("--tau-w", opt.tau_w, "Tournament width for library refreshment");
    cmd->add_option("--constraint-mode", opt.mode, "acr or bch")->check(CLI::IsMember({"acr", "bch"}));
    cmd->add_flag("--no-repair", opt.no_repair, "Disable slack repair of the balance equalities");
}

std::vector<int> parse_list(const std::string& text)
{
    std::vector<int> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        if (!item.empty()) {
            out.push_back(std::stoi(item));
        }
        if (comma == std::string::npos) {
            break;
        }
        start = comma + 1;
    }
    if (out.empty()) {
        throw std::invalid_argument("empty value list '" + text + "'");
    }
    return out;
}

int cmd_run(const SystemChoice& choice, const SolverOptions& opt, int trials, double seed, unsigned threads,
            const std::string& out_dir)
{
    const auto sys = choice.load();
    const auto problem = tsco::chped::compile(sys);
    const auto batch = tsco::bench::run_batch(problem, choice.case_id, opt.config(), trials, seed, threads);
    tsco::bench::export_batch(batch, out_dir, problem.variable_names, choice.reference());
    const auto stats = tsco::bench::compute_stats(batch);
    std::printf("%s  trials %zu/%d  min %.4f  max %.4f  mean %.4f  feasible %.0f%%  time %.3fs\n", sys.name.c_str(),
                stats.n_completed, trials, stats.min, stats.max, stats.mean, 100.0 * stats.feasibility_rate,
                stats.mean_wall_seconds);
    for (const auto& t : batch.trials) {
        if (!t.result) {
            std::fprintf(stderr, "trial %d failed: %s\n", t.index, t.error.c_str());
        }
    }
    return batch.all_completed() ? 0 : 1;
}

int cmd_sweep(const SystemChoice& choice, SolverOptions opt, const std::string& nl, const std::string& na, int trials,
              double seed, unsigned threads, const std::string& out_dir)
{
    const auto sys = choice.load();
    const auto problem = tsco::chped::compile(sys);
    const auto rows = tsco::bench::parameter_sweep(problem, choice.case_id, opt.config(), parse_list(nl), parse_list(na),
                                                   trials, seed, threads);
    std::filesystem::create_directories(out_dir);
    tsco::bench::write_text(std::filesystem::path(out_dir) / "sweep.csv", tsco::bench::sweep_csv(rows));
    std::printf("%8s %8s %10s %12s %12s %12s\n", "N_L", "N_a", "time(s)", "minimum", "maximum", "mean");
    bool ok = true;
    for (const auto& r : rows) {
        std::printf("%8d %8d %10.3f %12.4f %12.4f %12.4f\n", r.n_library, r.n_agents, r.stats.mean_wall_seconds,
                    r.stats.min, r.stats.max, r.stats.mean);
        ok = ok && r.stats.n_completed == static_cast<std::size_t>(trials);
    }
    return ok ? 0 : 1;
}

int cmd_verify(int case_id)
{
    const auto checks = tsco::verify::verify_case(case_id);
    for (const auto& c : checks) {
        std::printf("%-4s %-32s value %.6f  expected %.6f  tol %g\n", c.pass() ? "ok" : "FAIL", c.name.c_str(), c.value,
                    c.expected, c.tolerance);
    }
    const bool ok = tsco::verify::all_pass(checks);
    std::printf("case %d verification %s\n", case_id, ok ? "passed" : "failed");
    return ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app {"Social cognitive optimization with tent-map chaos for CHP economic dispatch"};
    app.require_subcommand(1);

    SystemChoice run_sys;
    SolverOptions run_opt;
    int run_trials = 20;
    double run_seed = 0.3141592653589793;
    unsigned run_threads = tsco::bench::default_thread_count();
    std::string run_out = "out";
    auto* run = app.add_subcommand("run", "Run a batch of trials and export statistics and traces");
    add_system_options(run, run_sys);
    add_solver_options(run, run_opt);
    run->add_option("--nl", run_opt.n_library, "Knowledge library size N_L");
    run->add_option("--na", run_opt.n_agents, "Learning agent count N_a");
    run->add_option("--trials", run_trials, "Number of trials")->check(CLI::PositiveNumber);
    run->add_option("--seed", run_seed, "Base seed in (0,1)")->check(CLI::Range(0.0, 1.0));
    run->add_option("--threads", run_threads, "Worker threads");
    run->add_option("--out", run_out, "Output directory");

    SystemChoice sweep_sys;
    SolverOptions sweep_opt;
    std::string sweep_nl = "100,150,200";
    std::string sweep_na = "20,50,70";
    int sweep_trials = 20;
    double sweep_seed = 0.3141592653589793;
    unsigned sweep_threads = tsco::bench::default_thread_count();
    std::string sweep_out = "out";
    auto* sweep = app.add_subcommand("sweep", "Grid over library size and agent count");
    add_system_options(sweep, sweep_sys);
    add_solver_options(sweep, sweep_opt);
    sweep->add_option("--nl", sweep_nl, "Comma-separated library sizes");
    sweep->add_option("--na", sweep_na, "Comma-separated agent counts");
    sweep->add_option("--trials", sweep_trials, "Trials per cell")->check(CLI::PositiveNumber);
    sweep->add_option("--seed", sweep_seed, "Base seed in (0,1)")->check(CLI::Range(0.0, 1.0));
    sweep->add_option("--threads", sweep_threads, "Worker threads");
    sweep->add_option("--out", sweep_out, "Output directory");

    int verify_case = 1;
    auto* verify = app.add_subcommand("verify", "Re-evaluate the reference dispatch rows");
    verify->add_option("--case", verify_case, "Benchmark case")->required()->check(CLI::IsMember({1, 2}));

    int emit_case = 1;
    std::string emit_out;
    auto* emit = app.add_subcommand("emit-case", "Print a built-in case in the JSON system format");
    emit->add_option("--case", emit_case, "Benchmark case")->required()->check(CLI::IsMember({1, 2}));
    emit->add_option("--out", emit_out, "Write to this file instead of stdout");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) {
            return cmd_run(run_sys, run_opt, run_trials, run_seed, run_threads, run_out);
        }
        if (*sweep) {
            return cmd_sweep(sweep_sys, sweep_opt, sweep_nl, sweep_na, sweep_trials, sweep_seed, sweep_threads,
                             sweep_out);
        }
        if (*verify) {
            return cmd_verify(verify_case);
        }
        if (*emit) {
            const auto text = tsco::chped::dump_system(tsco::chped::build_case(emit_case)) + "\n";
            if (emit_out.empty()) {
                std::cout << text;
            } else {
                tsco::bench::write_text(emit_out, text);
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
