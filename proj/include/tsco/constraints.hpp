#ifndef TSCO_CONSTRAINTS_HPP
#define TSCO_CONSTRAINTS_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <span>
#include <stdexcept>
#include <string>

#include "tsco/problem.hpp"

namespace tsco {

/// Objective value paired with the (floored) aggregate constraint violation.
struct Fitness {
    double objective = 0.0;
    double violation = 0.0;
};

/// Raw evaluation of a point, before any relaxation floor is applied.
struct Evaluation {
    double objective = 0.0;
    double raw_violation = 0.0;

    /// Fitness as seen under relaxation threshold `epsilon_r`.
    [[nodiscard]] Fitness fitness(double epsilon_r) const noexcept
    {
        return {objective, std::max(epsilon_r, raw_violation)};
    }
};

enum class ConstraintMode {
    acr, // adaptive constraint relaxing
    bch, // basic constraint handling (epsilon_r fixed at 0)
};

inline std::string to_string(ConstraintMode mode)
{
    return mode == ConstraintMode::acr ? "acr" : "bch";
}

inline ConstraintMode parse_constraint_mode(const std::string& text)
{
    if (text == "acr" || text == "ACR") {
        return ConstraintMode::acr;
    }
    if (text == "bch" || text == "BCH") {
        return ConstraintMode::bch;
    }
    throw std::invalid_argument("unknown constraint mode '" + text + "' (expected acr or bch)");
}

/// sum |h_i(x)| + sum max(0, g_j(x)), without the relaxation floor.
inline double raw_violation(std::span<const double> x, const Problem& problem)
{
    double total = 0.0;
    if (problem.equalities) {
        for (double h : problem.equalities(x)) {
            total += std::abs(h);
        }
    }
    if (problem.inequalities) {
        for (double g : problem.inequalities(x)) {
            total += std::max(0.0, g);
        }
    }
    return total;
}

/// Relaxed violation max{epsilon_r, raw}. Bounds are enforced by the caller.
inline double aggregate_violation(std::span<const double> x, const Problem& problem, double epsilon_r)
{
    return std::max(epsilon_r, raw_violation(x, problem));
}

inline Evaluation evaluate(std::span<const double> x, const Problem& problem)
{
    return {problem.objective(x), raw_violation(x, problem)};
}

/// Less violation first, then lower objective.
inline std::weak_ordering compare(const Fitness& a, const Fitness& b) noexcept
{
    if (a.violation < b.violation) {
        return std::weak_ordering::less;
    }
    if (b.violation < a.violation) {
        return std::weak_ordering::greater;
    }
    if (a.objective < b.objective) {
        return std::weak_ordering::less;
    }
    if (b.objective < a.objective) {
        return std::weak_ordering::greater;
    }
    return std::weak_ordering::equivalent;
}

/// Strict preference: a challenger must beat the incumbent, ties keep the incumbent.
inline bool precedes(const Fitness& challenger, const Fitness& incumbent) noexcept
{
    return compare(challenger, incumbent) < 0;
}

/**
 * Shrinking relaxation threshold for the equality-heavy early search.
 *
 *     eps(t) = eps0 * (1 - t / (zero_from_fraction * horizon))^decay_exponent
 *
 * and eps(t) = 0 once t reaches zero_from_fraction * horizon.
 */
class AcrSchedule {
public:
    static constexpr double default_zero_from_fraction = 0.45;
    static constexpr double default_decay_exponent = 4.0;

    AcrSchedule(double epsilon_initial, int horizon,
                double zero_from_fraction = default_zero_from_fraction,
                double decay_exponent = default_decay_exponent)
        : epsilon_initial_(epsilon_initial), epsilon_current_(epsilon_initial), zero_from_fraction_(zero_from_fraction),
          decay_exponent_(decay_exponent), horizon_(horizon)
    {
        if (!(epsilon_initial >= 0.0) || !std::isfinite(epsilon_initial)) {
            throw std::invalid_argument("AcrSchedule: initial threshold must be finite and >= 0");
        }
        if (!(zero_from_fraction > 0.0 && zero_from_fraction <= 1.0)) {
            throw std::invalid_argument("AcrSchedule: zero_from_fraction must lie in (0,1]");
        }
        if (!(decay_exponent > 0.0)) {
            throw std::invalid_argument("AcrSchedule: decay exponent must be positive");
        }
        if (horizon < 0) {
            throw std::invalid_argument("AcrSchedule: negative horizon");
        }
    }

    /// Threshold at iteration t; also becomes the current threshold.
    double step(int iteration)
    {
        epsilon_current_ = at(iteration);
        return epsilon_current_;
    }

    /// Threshold at iteration t without touching the state.
    [[nodiscard]] double at(int iteration) const
    {
        if (iteration < 0 || iteration > horizon_) {
            throw std::domain_error("AcrSchedule: iteration " + std::to_string(iteration) + " outside [0, "
                                    + std::to_string(horizon_) + "]");
        }
        const double zero_point = zero_from_fraction_ * static_cast<double>(horizon_);
        const double t = static_cast<double>(iteration);
        if (t >= zero_point) {
            return 0.0;
        }
        return epsilon_initial_ * std::pow(1.0 - t / zero_point, decay_exponent_);
    }

    [[nodiscard]] double epsilon_initial() const noexcept { return epsilon_initial_; }
    [[nodiscard]] double epsilon_current() const noexcept { return epsilon_current_; }
    [[nodiscard]] double zero_from_fraction() const noexcept { return zero_from_fraction_; }
    [[nodiscard]] double decay_exponent() const noexcept { return decay_exponent_; }
    [[nodiscard]] int horizon() const noexcept { return horizon_; }

private:
    double epsilon_initial_;
    double epsilon_current_;
    double zero_from_fraction_;
    double decay_exponent_;
    int horizon_;
};

} // namespace tsco

#endif // TSCO_CONSTRAINTS_HPP
