#ifndef TSCO_VERIFY_HPP
#define TSCO_VERIFY_HPP

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "tsco/chped.hpp"
#include "tsco/reference.hpp"

namespace tsco::verify {

struct Check {
    std::string name;
    double value = 0.0;
    double expected = 0.0;
    double tolerance = 0.0;

    [[nodiscard]] bool pass() const noexcept { return std::abs(value - expected) <= tolerance; }
};

inline bool all_pass(const std::vector<Check>& checks)
{
    for (const auto& c : checks) {
        if (!c.pass()) {
            return false;
        }
    }
    return true;
}

/// Re-evaluates the reference dispatch rows of a benchmark case.
inline std::vector<Check> verify_case(int case_id)
{
    std::vector<Check> checks;
    if (case_id == 1) {
        const auto sys = chped::build_case1();
        const auto& x = reference::case1_optimum();
        const auto r = chped::balance_residuals(sys, x);
        checks.push_back({"optimum cost", chped::total_cost(sys, x), reference::case1_optimum_cost, 0.01});
        checks.push_back({"optimum power residual", r.power, 0.0, 1e-9});
        checks.push_back({"optimum heat residual", r.heat, 0.0, 1e-9});
        for (const auto& row : reference::case1_rows()) {
            checks.push_back({"row " + row.method + " cost", chped::total_cost(sys, row.x), row.cost, 0.5});
        }
        return checks;
    }
    if (case_id == 2) {
        const auto sys = chped::build_case2();
        const auto& x = reference::case2_best().x;
        const auto r = chped::balance_residuals(sys, x);
        checks.push_back({"best cost", chped::total_cost(sys, x), reference::case2_best_cost, 0.05});
        checks.push_back({"transmission loss", chped::transmission_loss(sys, x), reference::case2_best_loss, 0.001});
        checks.push_back({"total power", chped::total_power(sys, x), reference::case2_best_total_power, 1e-4});
        checks.push_back({"total heat", chped::total_heat(sys, x), reference::case2_best_total_heat, 1e-4});
        checks.push_back({"power residual", r.power, 0.0, 1e-3});
        checks.push_back({"heat residual", r.heat, 0.0, 1e-3});
        return checks;
    }
    throw std::invalid_argument("unknown case " + std::to_string(case_id));
}

} // namespace tsco::verify

#endif // TSCO_VERIFY_HPP
