#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "tsco/bench.hpp"
#include "tsco/chped.hpp"
#include "tsco/reference.hpp"

using namespace tsco;
namespace fs = std::filesystem;

namespace {

SolverConfig quick()
{
    SolverConfig c;
    c.n_library = 40;
    c.n_agents = 10;
    c.max_iterations = 30;
    return c;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::vector<std::vector<std::string>> read_csv(const fs::path& p)
{
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(slurp(p));
    for (std::string line; std::getline(in, line);) {
        std::vector<std::string> cells;
        std::istringstream ls(line);
        for (std::string cell; std::getline(ls, cell, ',');) {
            cells.push_back(cell);
        }
        rows.push_back(cells);
    }
    return rows;
}

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / ("tsco_bench_" + name);
    fs::remove_all(dir);
    return dir;
}

} // namespace

TEST(Seeds, GoldenLadder)
{
    const auto seeds = bench::derive_seeds(0.1, 5);
    ASSERT_EQ(seeds.size(), 5U);
    EXPECT_DOUBLE_EQ(seeds[0], 0.1);
    EXPECT_NEAR(seeds[1], 0.1 + bench::golden_fraction, 1e-15);
    for (double s : seeds) {
        EXPECT_GT(s, 0.0);
        EXPECT_LT(s, 1.0);
    }
    EXPECT_FALSE(is_forbidden_tent_value(bench::trial_seed(0.25, 0)));
    EXPECT_FALSE(is_forbidden_tent_value(bench::trial_seed(0.5, 0)));
}

TEST(Batch, SingleTrialStats)
{
    const auto prob = chped::compile(chped::build_case1());
    const auto batch = bench::run_batch(prob, 1, quick(), 1, 0.3);
    const auto s = bench::compute_stats(batch);
    EXPECT_EQ(s.n_completed, 1U);
    EXPECT_EQ(s.min, s.max);
    EXPECT_EQ(s.mean, s.min);
    EXPECT_THROW(bench::run_batch(prob, 1, quick(), 0, 0.3), std::invalid_argument);
}

TEST(Batch, ThreadCountDoesNotChangeResults)
{
    const auto prob = chped::compile(chped::build_case2());
    const auto a = bench::run_batch(prob, 2, quick(), 4, 0.3, 1);
    const auto b = bench::run_batch(prob, 2, quick(), 4, 0.3, 3);
    for (std::size_t k = 0; k < 4; ++k) {
        EXPECT_EQ(a.trials[k].result->best.position, b.trials[k].result->best.position);
        EXPECT_EQ(a.trials[k].seed, b.seeds[k]);
    }
}

TEST(Export, ReproducibleAndConsistent)
{
    const auto prob = chped::compile(chped::build_case1());
    const auto dir_a = scratch("a");
    const auto dir_b = scratch("b");
    const auto batch_a = bench::run_batch(prob, 1, quick(), 3, 0.77);
    const auto batch_b = bench::run_batch(prob, 1, quick(), 3, 0.77);
    bench::export_batch(batch_a, dir_a, prob.variable_names, reference::case1_optimum_cost);
    bench::export_batch(batch_b, dir_b, prob.variable_names, reference::case1_optimum_cost);
    for (const std::string f : {"stats.csv", "trials.csv", "trace_0.csv", "trace_1.csv", "trace_2.csv"}) {
        ASSERT_TRUE(fs::exists(dir_a / f)) << f;
        EXPECT_EQ(slurp(dir_a / f), slurp(dir_b / f)) << f;
    }
    EXPECT_TRUE(fs::exists(dir_a / "result.json"));

    // Recompute the statistics from the exported per-trial rows.
    const auto rows = read_csv(dir_a / "trials.csv");
    ASSERT_EQ(rows.size(), 4U);
    ASSERT_EQ(rows[0][3], "best_objective");
    bench::TrialBatch again;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        bench::Trial t;
        t.index = static_cast<int>(i - 1);
        RunResult r;
        r.best.evaluation.objective = std::stod(rows[i][3]);
        r.best.evaluation.raw_violation = std::stod(rows[i][4]);
        r.wall_seconds = 0.0;
        t.result = r;
        again.trials.push_back(t);
    }
    const auto s1 = bench::compute_stats(batch_a);
    const auto s2 = bench::compute_stats(again);
    EXPECT_EQ(s1.min, s2.min);
    EXPECT_EQ(s1.max, s2.max);
    EXPECT_EQ(s1.mean, s2.mean);
    EXPECT_EQ(s1.feasibility_rate, s2.feasibility_rate);

    const auto stats = read_csv(dir_a / "stats.csv");
    ASSERT_EQ(stats.size(), 2U);
    EXPECT_EQ(std::stod(stats[1][4]), s1.mean);
}

TEST(Export, TraceShape)
{
    const auto prob = chped::compile(chped::build_case1());
    SolverConfig cfg;
    const auto r = run(prob, cfg);
    const auto csv = bench::trace_csv(r);
    std::istringstream in(csv);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "iteration,best_objective,best_raw_violation");
    int lines = 0;
    for (std::string l; std::getline(in, l);) {
        ++lines;
    }
    EXPECT_EQ(lines, 101);
}

TEST(Sweep, GridShape)
{
    const auto prob = chped::compile(chped::build_case1());
    SolverConfig cfg = quick();
    cfg.max_iterations = 5;
    const auto rows = bench::parameter_sweep(prob, 1, cfg, {20, 30, 40}, {5, 10, 15}, 1, 0.3);
    EXPECT_EQ(rows.size(), 9U);
    const auto one = bench::parameter_sweep(prob, 1, cfg, {20}, {5}, 1, 0.3);
    EXPECT_EQ(one.size(), 1U);
    EXPECT_THROW(bench::parameter_sweep(prob, 1, cfg, {}, {5}, 1, 0.3), std::invalid_argument);
    std::istringstream csv(bench::sweep_csv(rows));
    int lines = 0;
    for (std::string l; std::getline(csv, l);) {
        ++lines;
    }
    EXPECT_EQ(lines, 10);
}

TEST(Sweep, WallTimeGrowsWithAgentCount)
{
    const auto prob = chped::compile(chped::build_case1());
    SolverConfig cfg;
    const auto rows = bench::parameter_sweep(prob, 1, cfg, {150}, {20, 50, 70}, 10, 0.3, 1);
    ASSERT_EQ(rows.size(), 3U);
    EXPECT_LT(rows[0].stats.mean_wall_seconds, rows[1].stats.mean_wall_seconds);
    EXPECT_LT(rows[1].stats.mean_wall_seconds, rows[2].stats.mean_wall_seconds);
}

TEST(Export, FailedTrialIsReported)
{
    Problem bad;
    bad.name = "throws";
    bad.bounds = {{0.0}, {1.0}};
    bad.objective = [](std::span<const double> x) -> double {
        if (x[0] > 0.9) {
            throw std::runtime_error("objective blew up");
        }
        return x[0];
    };
    const auto batch = bench::run_batch(bad, 0, quick(), 2, 0.3);
    EXPECT_FALSE(batch.all_completed());
    EXPECT_NE(bench::trials_csv(batch, {"x"}).find("error"), std::string::npos);
}

TEST(Export, NoTrialBeatsTheCaseOneOptimum)
{
    const auto prob = chped::compile(chped::build_case1());
    const auto batch = bench::run_batch(prob, 1, SolverConfig {}, 20, 0.3141592653589793);
    for (const auto& t : batch.trials) {
        ASSERT_TRUE(t.result);
        EXPECT_GE(t.result->best.evaluation.objective - reference::case1_optimum_cost, -0.01) << t.index;
    }
}
