#ifndef TSCO_SCO_HPP
#define TSCO_SCO_HPP

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iterator>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsco/chaos.hpp"
#include "tsco/constraints.hpp"
#include "tsco/problem.hpp"

namespace tsco {

/// An evaluated position. `id` is the evaluation serial number within a run.
struct KnowledgePoint {
    std::vector<double> position;
    Evaluation evaluation;
    std::uint64_t id = 0;

    [[nodiscard]] Fitness fitness(double epsilon_r) const noexcept { return evaluation.fitness(epsilon_r); }
};

/**
 * Record of the best point ever evaluated, valid for every relaxation level.
 *
 * Ranking under any threshold eps uses the key (max(eps, raw), objective),
 * which is monotone in both raw violation and objective. The best point for
 * any eps is therefore always on the (raw, objective) Pareto front of the
 * evaluated points, so keeping that front gives the exact global best for
 * the current eps even after the threshold shrinks.
 */
class BestRecord {
public:
    /// Returns true if the point entered the front.
    bool offer(const KnowledgePoint& p)
    {
        const double raw = p.evaluation.raw_violation;
        const double obj = p.evaluation.objective;
        // front_ is sorted by raw ascending, objective strictly descending.
        auto it = std::lower_bound(front_.begin(), front_.end(), raw,
                                   [](const KnowledgePoint& q, double r) { return q.evaluation.raw_violation < r; });
        // Any point with raw <= p.raw and objective <= p.objective dominates p.
        if (it != front_.begin() && std::prev(it)->evaluation.objective <= obj) {
            return false;
        }
        if (it != front_.end() && it->evaluation.raw_violation == raw && it->evaluation.objective <= obj) {
            return false;
        }
        auto last = it;
        while (last != front_.end() && last->evaluation.objective >= obj) {
            ++last;
        }
        it = front_.erase(it, last);
        front_.insert(it, p);
        return true;
    }

    /// Compare-best point under threshold `epsilon_r`.
    [[nodiscard]] const KnowledgePoint& best(double epsilon_r) const
    {
        if (front_.empty()) {
            throw std::logic_error("BestRecord::best: nothing evaluated yet");
        }
        auto it = std::upper_bound(front_.begin(), front_.end(), epsilon_r,
                                   [](double e, const KnowledgePoint& q) { return e < q.evaluation.raw_violation; });
        // Quasi-feasible points all tie on violation; the one with the largest
        // raw violation within the threshold has the lowest objective.
        return it == front_.begin() ? front_.front() : *std::prev(it);
    }

    [[nodiscard]] bool empty() const noexcept { return front_.empty(); }
    [[nodiscard]] std::size_t size() const noexcept { return front_.size(); }
    [[nodiscard]] const std::vector<KnowledgePoint>& front() const noexcept { return front_; }

private:
    std::vector<KnowledgePoint> front_;
};

struct AcrParameters {
    std::optional<double> epsilon_initial; // defaults to the median raw violation of the initial library
    double zero_from_fraction = AcrSchedule::default_zero_from_fraction;
    double decay_exponent = AcrSchedule::default_decay_exponent;
};

struct SolverConfig {
    int n_library = 150;
    int n_agents = 50;
    int max_iterations = 100;
    int tournament_width = 2;
    int refresh_width = 4;
    double seed = 0.3141592653589793;
    ConstraintMode constraint_mode = ConstraintMode::acr;
    AcrParameters acr;
    // Raw violation at or below which a point is reported as feasible.
    double feasibility_tolerance = 1e-4;
    // Apply the problem's repair hook (if any) to every generated point.
    bool repair_balances = true;
    int chaos_warmup = ChaosStream::default_warmup;
    double chaos_epsilon = ChaosStream::default_epsilon;

    void validate() const
    {
        auto fail = [](const std::string& what) { throw std::invalid_argument("SolverConfig: " + what); };
        if (n_library < 1) {
            fail("n_library must be >= 1");
        }
        if (n_agents < 1 || n_agents > n_library) {
            fail("n_agents must lie in [1, n_library]");
        }
        if (max_iterations < 0) {
            fail("max_iterations must be >= 0");
        }
        if (max_iterations > 0 && (tournament_width < 2 || tournament_width > n_library - 1)) {
            fail("tournament_width must lie in [2, n_library - 1]");
        }
        if (max_iterations > 0 && (refresh_width < 1 || refresh_width > n_library)) {
            fail("refresh_width must lie in [1, n_library]");
        }
        if (!(feasibility_tolerance >= 0.0)) {
            fail("feasibility_tolerance must be >= 0");
        }
    }
};

/// Repairs (optionally), evaluates, counts, and stamps each point with its serial number.
class Evaluator {
public:
    using Hook = std::function<void(const KnowledgePoint&)>;

    explicit Evaluator(const Problem& problem, bool repair = true, Hook on_evaluate = {})
        : problem_(&problem), repair_(repair && static_cast<bool>(problem.repair)), on_evaluate_(std::move(on_evaluate))
    {
    }

    KnowledgePoint operator()(std::vector<double> position)
    {
        if (repair_) {
            problem_->repair(position);
        }
        KnowledgePoint p;
        p.evaluation = evaluate(position, *problem_);
        p.position = std::move(position);
        p.id = count_++;
        if (on_evaluate_) {
            on_evaluate_(p);
        }
        return p;
    }

    [[nodiscard]] std::size_t count() const noexcept { return count_; }
    [[nodiscard]] const Problem& problem() const noexcept { return *problem_; }

private:
    const Problem* problem_;
    bool repair_;
    Hook on_evaluate_;
    std::size_t count_ = 0;
};

struct KnowledgeLibrary {
    std::vector<KnowledgePoint> points;
    BestRecord record;
    std::vector<std::size_t> agent_assignments;

    [[nodiscard]] std::size_t size() const noexcept { return points.size(); }
    [[nodiscard]] const KnowledgePoint& global_best(double epsilon_r) const { return record.best(epsilon_r); }

    /// Compare-best index among the library's current points.
    [[nodiscard]] std::size_t best_index(double epsilon_r) const
    {
        std::size_t best = 0;
        for (std::size_t i = 1; i < points.size(); ++i) {
            if (precedes(points[i].fitness(epsilon_r), points[best].fitness(epsilon_r))) {
                best = i;
            }
        }
        return best;
    }
};

/// Draws `count` distinct indices from [0, n) other than `exclude`, by rejection.
inline std::vector<std::size_t> sample_distinct(ChaosStream& stream, std::size_t n, std::size_t count,
                                                std::optional<std::size_t> exclude = std::nullopt)
{
    const std::size_t pool = n - (exclude && *exclude < n ? 1 : 0);
    if (count > pool) {
        throw std::invalid_argument("sample_distinct: asked for " + std::to_string(count) + " of "
                                    + std::to_string(pool) + " indices");
    }
    std::vector<std::size_t> picked;
    picked.reserve(count);
    while (picked.size() < count) {
        const std::size_t i = stream.draw_index(n);
        if ((exclude && i == *exclude) || std::find(picked.begin(), picked.end(), i) != picked.end()) {
            continue;
        }
        picked.push_back(i);
    }
    return picked;
}

/// Builds the library with every coordinate drawn chaotically over its box.
inline KnowledgeLibrary initialize(const Problem& problem, const SolverConfig& config, ChaosStream& stream,
                                   Evaluator& evaluator)
{
    const auto& box = problem.bounds;
    KnowledgeLibrary lib;
    lib.points.reserve(static_cast<std::size_t>(config.n_library));
    for (int i = 0; i < config.n_library; ++i) {
        std::vector<double> x(problem.dimension());
        for (std::size_t d = 0; d < x.size(); ++d) {
            x[d] = stream.draw(box.lower[d], box.upper[d]);
        }
        lib.points.push_back(evaluator(std::move(x)));
        lib.record.offer(lib.points.back());
    }
    lib.agent_assignments = sample_distinct(stream, lib.size(), static_cast<std::size_t>(config.n_agents));
    return lib;
}

/// Index of the compare-best among `width` distinct chaotic picks, skipping `exclude`.
inline std::size_t tournament_select(const KnowledgeLibrary& lib, int width, std::optional<std::size_t> exclude,
                                     ChaosStream& stream, double epsilon_r)
{
    if (width < 1 || static_cast<std::size_t>(width) + 1 > lib.size()) {
        throw std::invalid_argument("tournament_select: width " + std::to_string(width)
                                    + " needs 1 <= width <= library size - 1");
    }
    const auto picks = sample_distinct(stream, lib.size(), static_cast<std::size_t>(width), exclude);
    std::size_t best = picks.front();
    for (std::size_t k = 1; k < picks.size(); ++k) {
        if (precedes(lib.points[picks[k]].fitness(epsilon_r), lib.points[best].fitness(epsilon_r))) {
            best = picks[k];
        }
    }
    return best;
}

/**
 * Chaotic neighborhood search. Per dimension the new coordinate is drawn from
 * the interval spanned by `anchor` and the reflection of `anchor` through
 * `pivot` (2 * pivot - anchor), then clamped into the box.
 *
 * The solver passes the worse point as anchor and the better one as pivot,
 * so samples reach from the worse point through and beyond the better one.
 */
inline std::vector<double> local_search(std::span<const double> anchor, std::span<const double> pivot,
                                        const Bounds& box, ChaosStream& stream)
{
    if (anchor.size() != pivot.size() || anchor.size() != box.size()) {
        throw std::domain_error("local_search: dimension mismatch");
    }
    std::vector<double> out(anchor.size());
    for (std::size_t d = 0; d < out.size(); ++d) {
        const double a = anchor[d];
        const double b = 2.0 * pivot[d] - anchor[d];
        const double v = stream.draw(std::min(a, b), std::max(a, b));
        out[d] = std::clamp(v, box.lower[d], box.upper[d]);
    }
    return out;
}

/// Replaces the worst of `width` chaotic picks when the candidate strictly beats it.
inline std::optional<std::size_t> refresh_library(KnowledgeLibrary& lib, const KnowledgePoint& candidate, int width,
                                                  ChaosStream& stream, double epsilon_r)
{
    if (width < 1 || static_cast<std::size_t>(width) > lib.size()) {
        throw std::invalid_argument("refresh_library: width out of range");
    }
    const auto picks = sample_distinct(stream, lib.size(), static_cast<std::size_t>(width));
    std::size_t worst = picks.front();
    for (std::size_t k = 1; k < picks.size(); ++k) {
        if (precedes(lib.points[worst].fitness(epsilon_r), lib.points[picks[k]].fitness(epsilon_r))) {
            worst = picks[k];
        }
    }
    if (!precedes(candidate.fitness(epsilon_r), lib.points[worst].fitness(epsilon_r))) {
        return std::nullopt;
    }
    lib.points[worst] = candidate;
    return worst;
}

inline double median(std::vector<double> values)
{
    if (values.empty()) {
        return 0.0;
    }
    const auto mid = values.begin() + static_cast<std::ptrdiff_t>(values.size() / 2);
    std::nth_element(values.begin(), mid, values.end());
    if (values.size() % 2 == 1) {
        return *mid;
    }
    const double upper = *mid;
    const double lower = *std::max_element(values.begin(), mid);
    return 0.5 * (lower + upper);
}

struct RunResult {
    KnowledgePoint best;
    // Index t holds the state after iteration t; index 0 is the initial library.
    std::vector<double> objective_trace;
    std::vector<double> violation_trace;
    std::vector<double> epsilon_trace;
    std::size_t evaluations = 0;
    double epsilon_initial = 0.0;
    double wall_seconds = 0.0;
    SolverConfig config;

    [[nodiscard]] bool feasible() const noexcept
    {
        return best.evaluation.raw_violation <= config.feasibility_tolerance;
    }

    /// First iteration whose reported best has raw violation within tolerance.
    [[nodiscard]] std::optional<int> crossing_iteration() const noexcept
    {
        for (std::size_t t = 0; t < violation_trace.size(); ++t) {
            if (violation_trace[t] <= config.feasibility_tolerance) {
                return static_cast<int>(t);
            }
        }
        return std::nullopt;
    }
};

struct RunHooks {
    std::function<void(const KnowledgePoint&)> on_evaluate;
    std::function<void(int iteration, const KnowledgeLibrary&)> on_iteration;
};

/// Full solver loop: library initialization, then max_iterations rounds of
/// tournament selection, chaotic observational learning and library refreshment
/// for every learning agent.
inline RunResult run(const Problem& problem, const SolverConfig& config, const RunHooks& hooks = {})
{
    problem.validate();
    config.validate();
    const auto started = std::chrono::steady_clock::now();

    ChaosStream stream(config.seed, config.chaos_warmup, config.chaos_epsilon);
    Evaluator evaluator(problem, config.repair_balances, hooks.on_evaluate);
    KnowledgeLibrary lib = initialize(problem, config, stream, evaluator);

    std::vector<double> initial_raw;
    initial_raw.reserve(lib.size());
    for (const auto& p : lib.points) {
        initial_raw.push_back(p.evaluation.raw_violation);
    }
    const bool relaxing = config.constraint_mode == ConstraintMode::acr;
    const double eps0 = relaxing ? config.acr.epsilon_initial.value_or(median(initial_raw)) : 0.0;
    AcrSchedule schedule(eps0, config.max_iterations, config.acr.zero_from_fraction, config.acr.decay_exponent);

    RunResult result;
    result.config = config;
    result.epsilon_initial = eps0;

    auto record_trace = [&](double epsilon_r) {
        const auto& shown = lib.global_best(std::max(epsilon_r, config.feasibility_tolerance));
        result.objective_trace.push_back(shown.evaluation.objective);
        result.violation_trace.push_back(shown.evaluation.raw_violation);
        result.epsilon_trace.push_back(epsilon_r);
    };

    double epsilon_r = relaxing ? schedule.step(0) : 0.0;
    record_trace(epsilon_r);
    if (hooks.on_iteration) {
        hooks.on_iteration(0, lib);
    }

    struct Agent {
        KnowledgePoint point;
        std::optional<std::size_t> slot; // library index holding `point`, if any
    };
    std::vector<Agent> agents;
    agents.reserve(lib.agent_assignments.size());
    for (std::size_t idx : lib.agent_assignments) {
        agents.push_back({lib.points[idx], idx});
    }

    for (int t = 1; t <= config.max_iterations; ++t) {
        epsilon_r = relaxing ? schedule.step(t) : 0.0;
        for (auto& agent : agents) {
            if (agent.slot && lib.points[*agent.slot].id != agent.point.id) {
                agent.slot.reset();
            }
            const std::size_t tp = tournament_select(lib, config.tournament_width, agent.slot, stream, epsilon_r);
            const KnowledgePoint& model = lib.points[tp];

            const bool agent_better = precedes(agent.point.fitness(epsilon_r), model.fitness(epsilon_r));
            const auto& better = agent_better ? agent.point : model;
            const auto& worse = agent_better ? model : agent.point;
            KnowledgePoint fresh = evaluator(local_search(worse.position, better.position, problem.bounds, stream));
            lib.record.offer(fresh);

            agent.slot = refresh_library(lib, fresh, config.refresh_width, stream, epsilon_r);
            agent.point = std::move(fresh);
        }
        record_trace(epsilon_r);
        if (hooks.on_iteration) {
            hooks.on_iteration(t, lib);
        }
    }

    result.best = lib.global_best(std::max(epsilon_r, config.feasibility_tolerance));
    result.evaluations = evaluator.count();
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return result;
}

} // namespace tsco

#endif // TSCO_SCO_HPP
