#ifndef TSCO_BENCH_HPP
#define TSCO_BENCH_HPP

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "tsco/chaos.hpp"
#include "tsco/problem.hpp"
#include "tsco/sco.hpp"

namespace tsco::bench {

inline constexpr double golden_fraction = 0.6180339887498949;

/// Seed of trial k: frac(base + k * golden_fraction), nudged past forbidden tent values.
inline double trial_seed(double base_seed, int k)
{
    double s = base_seed + static_cast<double>(k) * golden_fraction;
    s -= std::floor(s);
    while (!(s > 0.0 && s < 1.0) || is_forbidden_tent_value(s)) {
        s += ChaosStream::default_epsilon;
        s -= std::floor(s);
    }
    return s;
}

inline std::vector<double> derive_seeds(double base_seed, int n_trials)
{
    std::vector<double> seeds;
    seeds.reserve(static_cast<std::size_t>(std::max(n_trials, 0)));
    for (int k = 0; k < n_trials; ++k) {
        seeds.push_back(trial_seed(base_seed, k));
    }
    return seeds;
}

struct Trial {
    int index = 0;
    double seed = 0.0;
    std::optional<RunResult> result;
    std::string error; // set when the trial threw
};

struct TrialBatch {
    int case_id = 0;
    SolverConfig config;
    int n_trials = 0;
    double base_seed = 0.0;
    std::vector<double> seeds;
    std::vector<Trial> trials;

    [[nodiscard]] std::size_t n_completed() const
    {
        return static_cast<std::size_t>(std::count_if(trials.begin(), trials.end(), [](const Trial& t) { return t.result.has_value(); }));
    }
    [[nodiscard]] bool all_completed() const { return n_completed() == trials.size(); }
};

struct BatchStats {
    double min = 0.0;
    double max = 0.0;
    double mean = 0.0;
    double mean_wall_seconds = 0.0;
    double feasibility_rate = 0.0;
    std::size_t n_completed = 0;
};

/// Statistics over completed trials, summed in trial order.
inline BatchStats compute_stats(const TrialBatch& batch)
{
    BatchStats s;
    double sum = 0.0;
    double wall = 0.0;
    std::size_t feasible = 0;
    for (const auto& t : batch.trials) {
        if (!t.result) {
            continue;
        }
        const double f = t.result->best.evaluation.objective;
        if (s.n_completed == 0) {
            s.min = f;
            s.max = f;
        }
        s.min = std::min(s.min, f);
        s.max = std::max(s.max, f);
        sum += f;
        wall += t.result->wall_seconds;
        feasible += t.result->feasible() ? 1 : 0;
        ++s.n_completed;
    }
    if (s.n_completed > 0) {
        const auto n = static_cast<double>(s.n_completed);
        s.mean = std::clamp(sum / n, s.min, s.max);
        s.mean_wall_seconds = wall / n;
        s.feasibility_rate = static_cast<double>(feasible) / n;
    }
    return s;
}

inline unsigned default_thread_count()
{
    return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs n_trials independent solver runs, in parallel, keeping trial order.
inline TrialBatch run_batch(const Problem& problem, int case_id, const SolverConfig& config, int n_trials, double base_seed,
                            unsigned n_threads = default_thread_count())
{
    if (n_trials < 1) {
        throw std::invalid_argument("run_batch: n_trials must be >= 1");
    }
    problem.validate();
    config.validate();
    TrialBatch batch;
    batch.case_id = case_id;
    batch.config = config;
    batch.n_trials = n_trials;
    batch.base_seed = base_seed;
    batch.seeds = derive_seeds(base_seed, n_trials);
    batch.trials.resize(static_cast<std::size_t>(n_trials));

    std::atomic<int> next {0};
    auto worker = [&] {
        for (int k = next++; k < n_trials; k = next++) {
            Trial& trial = batch.trials[static_cast<std::size_t>(k)];
            trial.index = k;
            trial.seed = batch.seeds[static_cast<std::size_t>(k)];
            try {
                SolverConfig cfg = config;
                cfg.seed = trial.seed;
                trial.result = run(problem, cfg);
            } catch (const std::exception& e) {
                trial.error = e.what();
            } catch (...) {
                trial.error = "unknown error";
            }
        }
    };
    const unsigned n_workers = std::clamp<unsigned>(n_threads, 1U, static_cast<unsigned>(n_trials));
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (unsigned i = 0; i < n_workers; ++i) {
        pool.emplace_back(worker);
    }
    for (auto& th : pool) {
        th.join();
    }
    return batch;
}

struct SweepRow {
    int n_library = 0;
    int n_agents = 0;
    BatchStats stats;
};

inline std::vector<SweepRow> parameter_sweep(const Problem& problem, int case_id, const SolverConfig& base,
                                             const std::vector<int>& n_library_values,
                                             const std::vector<int>& n_agent_values, int n_trials, double base_seed,
                                             unsigned n_threads = default_thread_count())
{
    if (n_library_values.empty() || n_agent_values.empty()) {
        throw std::invalid_argument("parameter_sweep: value lists must be non-empty");
    }
    std::vector<SweepRow> rows;
    for (int nl : n_library_values) {
        for (int na : n_agent_values) {
            SolverConfig cfg = base;
            cfg.n_library = nl;
            cfg.n_agents = na;
            const auto batch = run_batch(problem, case_id, cfg, n_trials, base_seed, n_threads);
            rows.push_back({nl, na, compute_stats(batch)});
        }
    }
    return rows;
}

// ---- CSV / JSON export ----

inline std::string fmt_real(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string trace_csv(const RunResult& r)
{
    std::ostringstream out;
    out << "iteration,best_objective,best_raw_violation\n";
    for (std::size_t t = 0; t < r.objective_trace.size(); ++t) {
        out << t << ',' << fmt_real(r.objective_trace[t]) << ',' << fmt_real(r.violation_trace[t]) << '\n';
    }
    return out.str();
}

/// One row per trial. `reference` adds a best - reference column.
inline std::string trials_csv(const TrialBatch& batch, const std::vector<std::string>& variable_names,
                              std::optional<double> reference = std::nullopt)
{
    std::ostringstream out;
    out << "trial,seed,status,best_objective,best_raw_violation,feasible,evaluations,epsilon_initial,crossing_iteration";
    if (reference) {
        out << ",gap_to_reference";
    }
    for (const auto& name : variable_names) {
        out << ',' << name;
    }
    out << '\n';
    for (const auto& t : batch.trials) {
        out << t.index << ',' << fmt_real(t.seed) << ',';
        if (!t.result) {
            out << "error,,,,,,";
            if (reference) {
                out << ',';
            }
            for (std::size_t d = 0; d < variable_names.size(); ++d) {
                out << ',';
            }
            out << '\n';
            continue;
        }
        const auto& r = *t.result;
        const auto cross = r.crossing_iteration();
        out << "ok," << fmt_real(r.best.evaluation.objective) << ',' << fmt_real(r.best.evaluation.raw_violation) << ','
            << (r.feasible() ? 1 : 0) << ',' << r.evaluations << ',' << fmt_real(r.epsilon_initial) << ','
            << (cross ? std::to_string(*cross) : std::string {});
        if (reference) {
            out << ',' << fmt_real(r.best.evaluation.objective - *reference);
        }
        for (double v : r.best.position) {
            out << ',' << fmt_real(v);
        }
        out << '\n';
    }
    return out.str();
}

/// Solution-quality statistics; timing lives in result.json so this file stays reproducible.
inline std::string stats_csv(const BatchStats& s, std::size_t n_trials)
{
    std::ostringstream out;
    out << "n_trials,n_completed,minimum,maximum,mean,feasibility_rate\n";
    out << n_trials << ',' << s.n_completed << ',' << fmt_real(s.min) << ',' << fmt_real(s.max) << ',' << fmt_real(s.mean)
        << ',' << fmt_real(s.feasibility_rate) << '\n';
    return out.str();
}

inline std::string sweep_csv(const std::vector<SweepRow>& rows)
{
    std::ostringstream out;
    out << "n_library,n_agents,execution_time_s,minimum,maximum,mean,feasibility_rate\n";
    for (const auto& row : rows) {
        out << row.n_library << ',' << row.n_agents << ',' << fmt_real(row.stats.mean_wall_seconds) << ','
            << fmt_real(row.stats.min) << ',' << fmt_real(row.stats.max) << ',' << fmt_real(row.stats.mean) << ','
            << fmt_real(row.stats.feasibility_rate) << '\n';
    }
    return out.str();
}

inline nlohmann::json config_json(const SolverConfig& c)
{
    nlohmann::json j = {{"n_library", c.n_library},
                        {"n_agents", c.n_agents},
                        {"max_iterations", c.max_iterations},
                        {"tournament_width", c.tournament_width},
                        {"refresh_width", c.refresh_width},
                        {"constraint_mode", to_string(c.constraint_mode)},
                        {"zero_from_fraction", c.acr.zero_from_fraction},
                        {"decay_exponent", c.acr.decay_exponent},
                        {"feasibility_tolerance", c.feasibility_tolerance},
                        {"repair_balances", c.repair_balances},
                        {"chaos_warmup", c.chaos_warmup},
                        {"chaos_epsilon", c.chaos_epsilon}};
    j["epsilon_initial"] = c.acr.epsilon_initial ? nlohmann::json(*c.acr.epsilon_initial) : nlohmann::json(nullptr);
    return j;
}

inline nlohmann::json stats_json(const BatchStats& s)
{
    return {{"minimum", s.min},
            {"maximum", s.max},
            {"mean", s.mean},
            {"mean_wall_seconds", s.mean_wall_seconds},
            {"feasibility_rate", s.feasibility_rate},
            {"n_completed", s.n_completed}};
}

/// Summary of the batch including timings and the best solution found.
inline nlohmann::json result_json(const TrialBatch& batch, const std::vector<std::string>& variable_names)
{
    const BatchStats stats = compute_stats(batch);
    nlohmann::json j;
    j["case"] = batch.case_id;
    j["n_trials"] = batch.n_trials;
    j["base_seed"] = batch.base_seed;
    j["config"] = config_json(batch.config);
    j["stats"] = stats_json(stats);
    j["variables"] = variable_names;
    nlohmann::json trials = nlohmann::json::array();
    const Trial* best = nullptr;
    for (const auto& t : batch.trials) {
        nlohmann::json row = {{"trial", t.index}, {"seed", t.seed}};
        if (t.result) {
            const auto& r = *t.result;
            const auto cross = r.crossing_iteration();
            row["best_objective"] = r.best.evaluation.objective;
            row["best_raw_violation"] = r.best.evaluation.raw_violation;
            row["feasible"] = r.feasible();
            row["evaluations"] = r.evaluations;
            row["wall_seconds"] = r.wall_seconds;
            row["crossing_iteration"] = cross ? nlohmann::json(*cross) : nlohmann::json(nullptr);
            const Fitness f = r.best.fitness(r.config.feasibility_tolerance);
            if (best == nullptr || precedes(f, best->result->best.fitness(r.config.feasibility_tolerance))) {
                best = &t;
            }
        } else {
            row["error"] = t.error;
        }
        trials.push_back(std::move(row));
    }
    j["trials"] = std::move(trials);
    if (best != nullptr) {
        j["best"] = {{"trial", best->index},
                     {"objective", best->result->best.evaluation.objective},
                     {"raw_violation", best->result->best.evaluation.raw_violation},
                     {"position", best->result->best.position}};
    }
    return j;
}

inline void write_text(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

/// Writes stats.csv, trials.csv, trace_<k>.csv and result.json into `dir`.
inline void export_batch(const TrialBatch& batch, const std::filesystem::path& dir,
                         const std::vector<std::string>& variable_names, std::optional<double> reference = std::nullopt)
{
    std::filesystem::create_directories(dir);
    write_text(dir / "stats.csv", stats_csv(compute_stats(batch), batch.trials.size()));
    write_text(dir / "trials.csv", trials_csv(batch, variable_names, reference));
    for (const auto& t : batch.trials) {
        if (t.result) {
            write_text(dir / ("trace_" + std::to_string(t.index) + ".csv"), trace_csv(*t.result));
        }
    }
    write_text(dir / "result.json", result_json(batch, variable_names).dump(2) + "\n");
}

} // namespace tsco::bench

#endif // TSCO_BENCH_HPP
