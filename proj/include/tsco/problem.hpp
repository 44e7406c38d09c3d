#ifndef TSCO_PROBLEM_HPP
#define TSCO_PROBLEM_HPP

#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace tsco {

/// Axis-aligned box [lower, upper] over the decision vector.
struct Bounds {
    std::vector<double> lower;
    std::vector<double> upper;

    [[nodiscard]] std::size_t size() const noexcept { return lower.size(); }

    [[nodiscard]] bool contains(std::span<const double> x) const noexcept
    {
        if (x.size() != lower.size()) {
            return false;
        }
        for (std::size_t d = 0; d < x.size(); ++d) {
            if (!(x[d] >= lower[d] && x[d] <= upper[d])) {
                return false;
            }
        }
        return true;
    }
};

/**
 * Constrained minimization problem
 *
 *     min f(x)  s.t.  g(x) <= 0,  h(x) = 0,  lower <= x <= upper.
 *
 * The callables must be pure so that independent runs can share a Problem.
 */
struct Problem {
    using Objective = std::function<double(std::span<const double>)>;
    using ConstraintSet = std::function<std::vector<double>(std::span<const double>)>;
    using Repair = std::function<void(std::span<double>)>;

    std::string name;
    std::vector<std::string> variable_names;
    Bounds bounds;
    Objective objective;
    ConstraintSet equalities;   // h(x), each should be 0
    ConstraintSet inequalities; // g(x), each should be <= 0
    // Optional in-box adjustment toward the equality manifold, applied to
    // generated points before they are evaluated.
    Repair repair;
    std::size_t n_equalities = 0;
    std::size_t n_inequalities = 0;

    [[nodiscard]] std::size_t dimension() const noexcept { return bounds.size(); }

    void validate() const
    {
        if (dimension() == 0) {
            throw std::invalid_argument("Problem '" + name + "': dimension must be at least 1");
        }
        if (bounds.upper.size() != bounds.lower.size()) {
            throw std::invalid_argument("Problem '" + name + "': bound vectors differ in length");
        }
        for (std::size_t d = 0; d < dimension(); ++d) {
            if (!(bounds.lower[d] <= bounds.upper[d])) {
                throw std::invalid_argument("Problem '" + name + "': empty box in dimension " + std::to_string(d));
            }
        }
        if (!objective) {
            throw std::invalid_argument("Problem '" + name + "': missing objective");
        }
    }
};

} // namespace tsco

#endif // TSCO_PROBLEM_HPP
