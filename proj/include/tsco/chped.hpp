#ifndef TSCO_CHPED_HPP
#define TSCO_CHPED_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tsco/problem.hpp"

// Combined heat and power economic dispatch model.
//
// Decision vector layout: [P of power units, P of cogen units, H of cogen units, H of heat units].

namespace tsco::chped {

struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    [[nodiscard]] bool contains(double v) const noexcept { return v >= lo && v <= hi; }
};

/// Power-only unit: a p^2 + b p + c + |d sin(e (p_min - p))|.
struct PowerUnit {
    std::string name;
    double a = 0.0, b = 0.0, c = 0.0;
    double d = 0.0, e = 0.0;
    double p_min = 0.0, p_max = 0.0;
};

enum class GateVariable { heat, power };

/// One piece of a piecewise linear constraint alpha P + beta H + gamma <= 0,
/// active while the gating variable lies in (gate_lo, gate_hi], or in
/// [gate_lo, gate_hi] when `closed_below`.
struct HalfPlaneBranch {
    double gate_lo = 0.0;
    double gate_hi = 0.0;
    bool closed_below = false;
    double p_coef = 0.0;
    double h_coef = 0.0;
    double constant = 0.0;

    [[nodiscard]] bool applies(double gate) const noexcept
    {
        return (gate > gate_lo || (closed_below && gate == gate_lo)) && gate <= gate_hi;
    }
    [[nodiscard]] double residual(double p, double h) const noexcept { return p_coef * p + h_coef * h + constant; }
};

struct PiecewiseHalfPlane {
    std::string name;
    GateVariable gate = GateVariable::heat;
    std::vector<HalfPlaneBranch> branches;

    [[nodiscard]] const HalfPlaneBranch& active_branch(double p, double h) const
    {
        const double g = gate == GateVariable::heat ? h : p;
        for (const auto& br : branches) {
            if (br.applies(g)) {
                return br;
            }
        }
        throw std::domain_error("constraint " + name + ": gating value " + std::to_string(g) + " matches no branch");
    }

    /// Signed residual of the active branch; positive means violated.
    [[nodiscard]] double residual(double p, double h) const { return active_branch(p, h).residual(p, h); }
};

/// Cogeneration unit: a p^2 + b p + c + d h^2 + e h + f h p.
struct CogenUnit {
    std::string name;
    double a = 0.0, b = 0.0, c = 0.0, d = 0.0, e = 0.0, f = 0.0;
    Interval p_box;
    Interval h_box;
    std::vector<PiecewiseHalfPlane> region;
};

/// Heat-only unit: a h^2 + b h + c.
struct HeatUnit {
    std::string name;
    double a = 0.0, b = 0.0, c = 0.0;
    double h_min = 0.0, h_max = 0.0;
};

/// P_loss = P^T B P + B0 . P + B00 over power units then cogen units.
struct LossModel {
    std::vector<std::vector<double>> b;
    std::vector<double> b0;
    double b00 = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return b0.size(); }

    [[nodiscard]] bool symmetric() const noexcept
    {
        for (std::size_t i = 0; i < b.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (b[i][j] != b[j][i]) {
                    return false;
                }
            }
        }
        return true;
    }

    [[nodiscard]] double operator()(std::span<const double> p) const
    {
        double loss = b00;
        for (std::size_t i = 0; i < p.size(); ++i) {
            double row = 0.0;
            for (std::size_t j = 0; j < p.size(); ++j) {
                row += b[i][j] * p[j];
            }
            loss += p[i] * row + b0[i] * p[i];
        }
        return loss;
    }
};

struct BalanceResiduals {
    double power = 0.0; // MW
    double heat = 0.0;  // MWth
};

struct ChpedSystem {
    std::string name;
    std::vector<PowerUnit> power_units;
    std::vector<CogenUnit> cogen_units;
    std::vector<HeatUnit> heat_units;
    std::optional<LossModel> loss;
    double p_demand = 0.0;
    double h_demand = 0.0;
    double balance_tolerance = 1e-4;

    [[nodiscard]] std::size_t n_power() const noexcept { return power_units.size(); }
    [[nodiscard]] std::size_t n_cogen() const noexcept { return cogen_units.size(); }
    [[nodiscard]] std::size_t n_heat() const noexcept { return heat_units.size(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return n_power() + 2 * n_cogen() + n_heat(); }

    // Offsets into the decision vector.
    [[nodiscard]] std::size_t cogen_p_index(std::size_t j) const noexcept { return n_power() + j; }
    [[nodiscard]] std::size_t cogen_h_index(std::size_t j) const noexcept { return n_power() + n_cogen() + j; }
    [[nodiscard]] std::size_t heat_index(std::size_t k) const noexcept { return n_power() + 2 * n_cogen() + k; }

    void validate() const
    {
        auto fail = [this](const std::string& what) { throw std::invalid_argument("system '" + name + "': " + what); };
        for (const auto& u : power_units) {
            if (!(u.p_min <= u.p_max)) {
                fail("power unit " + u.name + " has p_min > p_max");
            }
            if (u.d < 0.0) {
                fail("power unit " + u.name + " has negative valve-point amplitude");
            }
        }
        for (const auto& u : cogen_units) {
            if (!(u.p_box.lo <= u.p_box.hi) || !(u.h_box.lo <= u.h_box.hi)) {
                fail("cogen unit " + u.name + " has an empty box");
            }
            for (const auto& g : u.region) {
                if (g.branches.empty()) {
                    fail("constraint " + g.name + " has no branches");
                }
            }
        }
        for (const auto& u : heat_units) {
            if (!(u.h_min <= u.h_max)) {
                fail("heat unit " + u.name + " has h_min > h_max");
            }
        }
        if (loss) {
            const std::size_t n = n_power() + n_cogen();
            if (loss->b.size() != n || loss->b0.size() != n) {
                fail("loss model size does not match the number of power-producing units");
            }
            for (const auto& row : loss->b) {
                if (row.size() != n) {
                    fail("loss matrix is not square");
                }
            }
            if (!loss->symmetric()) {
                fail("loss matrix is not symmetric");
            }
        }
    }
};

inline void require_in(const Interval& box, double v, const std::string& what)
{
    if (!box.contains(v)) {
        throw std::domain_error(what + " = " + std::to_string(v) + " outside [" + std::to_string(box.lo) + ", "
                                + std::to_string(box.hi) + "]");
    }
}

inline double power_cost(const PowerUnit& u, double p)
{
    require_in({u.p_min, u.p_max}, p, u.name + " power");
    return u.a * p * p + u.b * p + u.c + std::abs(u.d * std::sin(u.e * (u.p_min - p)));
}

inline double cogen_cost(const CogenUnit& u, double p, double h)
{
    require_in(u.p_box, p, u.name + " power");
    require_in(u.h_box, h, u.name + " heat");
    return u.a * p * p + u.b * p + u.c + u.d * h * h + u.e * h + u.f * h * p;
}

inline double heat_cost(const HeatUnit& u, double h)
{
    require_in({u.h_min, u.h_max}, h, u.name + " heat");
    return u.a * h * h + u.b * h + u.c;
}

inline void require_layout(const ChpedSystem& sys, std::span<const double> x)
{
    if (x.size() != sys.dimension()) {
        throw std::domain_error("decision vector has " + std::to_string(x.size()) + " entries, system '" + sys.name
                                + "' expects " + std::to_string(sys.dimension()));
    }
}

inline double total_cost(const ChpedSystem& sys, std::span<const double> x)
{
    require_layout(sys, x);
    double cost = 0.0;
    for (std::size_t i = 0; i < sys.n_power(); ++i) {
        cost += power_cost(sys.power_units[i], x[i]);
    }
    for (std::size_t j = 0; j < sys.n_cogen(); ++j) {
        cost += cogen_cost(sys.cogen_units[j], x[sys.cogen_p_index(j)], x[sys.cogen_h_index(j)]);
    }
    for (std::size_t k = 0; k < sys.n_heat(); ++k) {
        cost += heat_cost(sys.heat_units[k], x[sys.heat_index(k)]);
    }
    return cost;
}

/// Power outputs in loss-model order (power units, then cogen units).
inline std::vector<double> power_outputs(const ChpedSystem& sys, std::span<const double> x)
{
    require_layout(sys, x);
    return {x.begin(), x.begin() + static_cast<std::ptrdiff_t>(sys.n_power() + sys.n_cogen())};
}

inline double transmission_loss(const ChpedSystem& sys, std::span<const double> x)
{
    if (!sys.loss) {
        require_layout(sys, x);
        return 0.0;
    }
    return (*sys.loss)(power_outputs(sys, x));
}

inline double total_power(const ChpedSystem& sys, std::span<const double> x)
{
    double sum = 0.0;
    for (double p : power_outputs(sys, x)) {
        sum += p;
    }
    return sum;
}

inline double total_heat(const ChpedSystem& sys, std::span<const double> x)
{
    require_layout(sys, x);
    double sum = 0.0;
    for (std::size_t j = 0; j < sys.n_cogen(); ++j) {
        sum += x[sys.cogen_h_index(j)];
    }
    for (std::size_t k = 0; k < sys.n_heat(); ++k) {
        sum += x[sys.heat_index(k)];
    }
    return sum;
}

/// Signed balance residuals: generation minus (demand + loss), heat minus demand.
inline BalanceResiduals balance_residuals(const ChpedSystem& sys, std::span<const double> x)
{
    return {total_power(sys, x) - (sys.p_demand + transmission_loss(sys, x)), total_heat(sys, x) - sys.h_demand};
}

/// One residual per feasible-region constraint of the unit, positive when violated.
inline std::vector<double> region_residuals(const CogenUnit& u, double p, double h)
{
    require_in(u.p_box, p, u.name + " power");
    require_in(u.h_box, h, u.name + " heat");
    std::vector<double> out;
    out.reserve(u.region.size());
    for (const auto& g : u.region) {
        out.push_back(g.residual(p, h));
    }
    return out;
}

inline std::vector<double> all_region_residuals(const ChpedSystem& sys, std::span<const double> x)
{
    require_layout(sys, x);
    std::vector<double> out;
    for (std::size_t j = 0; j < sys.n_cogen(); ++j) {
        auto r = region_residuals(sys.cogen_units[j], x[sys.cogen_p_index(j)], x[sys.cogen_h_index(j)]);
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

struct SlackChoice {
    std::size_t power = 0; // decision-vector index of the power slack
    std::size_t heat = 0;  // decision-vector index of the heat slack
};

/// Picks the power-producing and heat-producing variables with the widest boxes
/// (first one on ties) as the balancing slacks.
inline SlackChoice choose_slacks(const ChpedSystem& sys)
{
    if (sys.n_power() + sys.n_cogen() == 0 || sys.n_cogen() + sys.n_heat() == 0) {
        throw std::invalid_argument("system '" + sys.name + "' needs at least one power and one heat producer");
    }
    SlackChoice slack;
    double widest = -1.0;
    auto consider = [&widest](std::size_t& target, std::size_t idx, double lo, double hi) {
        if (hi - lo > widest) {
            widest = hi - lo;
            target = idx;
        }
    };
    for (std::size_t i = 0; i < sys.n_power(); ++i) {
        consider(slack.power, i, sys.power_units[i].p_min, sys.power_units[i].p_max);
    }
    for (std::size_t j = 0; j < sys.n_cogen(); ++j) {
        consider(slack.power, sys.cogen_p_index(j), sys.cogen_units[j].p_box.lo, sys.cogen_units[j].p_box.hi);
    }
    widest = -1.0;
    for (std::size_t j = 0; j < sys.n_cogen(); ++j) {
        consider(slack.heat, sys.cogen_h_index(j), sys.cogen_units[j].h_box.lo, sys.cogen_units[j].h_box.hi);
    }
    for (std::size_t k = 0; k < sys.n_heat(); ++k) {
        consider(slack.heat, sys.heat_index(k), sys.heat_units[k].h_min, sys.heat_units[k].h_max);
    }
    return slack;
}

inline Bounds bounds_of(const ChpedSystem& sys);

/**
 * Moves the slack variables so that both balances hold, then clamps them into
 * their boxes. The heat balance is linear and is solved directly; the power
 * slack is found by Newton steps through the loss model. When a slack hits its
 * box the remaining residual is left for the constraint handler.
 */
inline void repair_balances(const ChpedSystem& sys, const SlackChoice& slack, std::span<double> x)
{
    require_layout(sys, x);
    const Bounds box = bounds_of(sys);

    double other_heat = -x[slack.heat];
    for (std::size_t j = 0; j < sys.n_cogen(); ++j) {
        other_heat += x[sys.cogen_h_index(j)];
    }
    for (std::size_t k = 0; k < sys.n_heat(); ++k) {
        other_heat += x[sys.heat_index(k)];
    }
    x[slack.heat] = std::clamp(sys.h_demand - other_heat, box.lower[slack.heat], box.upper[slack.heat]);

    const std::size_t s = slack.power;
    const std::size_t n = sys.n_power() + sys.n_cogen();
    for (int iter = 0; iter < 8; ++iter) {
        const double residual = balance_residuals(sys, x).power;
        if (std::abs(residual) < 1e-12) {
            break;
        }
        double dloss = 0.0;
        if (sys.loss) {
            dloss = sys.loss->b0[s];
            for (std::size_t j = 0; j < n; ++j) {
                dloss += 2.0 * sys.loss->b[s][j] * x[j];
            }
        }
        const double next = std::clamp(x[s] - residual / (1.0 - dloss), box.lower[s], box.upper[s]);
        if (next == x[s]) {
            break;
        }
        x[s] = next;
    }
}

inline Bounds bounds_of(const ChpedSystem& sys)
{
    Bounds box;
    box.lower.resize(sys.dimension());
    box.upper.resize(sys.dimension());
    for (std::size_t i = 0; i < sys.n_power(); ++i) {
        box.lower[i] = sys.power_units[i].p_min;
        box.upper[i] = sys.power_units[i].p_max;
    }
    for (std::size_t j = 0; j < sys.n_cogen(); ++j) {
        const auto& u = sys.cogen_units[j];
        box.lower[sys.cogen_p_index(j)] = u.p_box.lo;
        box.upper[sys.cogen_p_index(j)] = u.p_box.hi;
        box.lower[sys.cogen_h_index(j)] = u.h_box.lo;
        box.upper[sys.cogen_h_index(j)] = u.h_box.hi;
    }
    for (std::size_t k = 0; k < sys.n_heat(); ++k) {
        box.lower[sys.heat_index(k)] = sys.heat_units[k].h_min;
        box.upper[sys.heat_index(k)] = sys.heat_units[k].h_max;
    }
    return box;
}

inline std::vector<std::string> variable_names(const ChpedSystem& sys)
{
    std::vector<std::string> names;
    for (const auto& u : sys.power_units) {
        names.push_back("P[" + u.name + "]");
    }
    for (const auto& u : sys.cogen_units) {
        names.push_back("P[" + u.name + "]");
    }
    for (const auto& u : sys.cogen_units) {
        names.push_back("H[" + u.name + "]");
    }
    for (const auto& u : sys.heat_units) {
        names.push_back("H[" + u.name + "]");
    }
    return names;
}

/// Generic constrained problem over the system's decision vector. The system is
/// copied into the callables, so the Problem is self-contained and immutable.
inline Problem compile(ChpedSystem sys)
{
    sys.validate();
    Problem prob;
    prob.name = sys.name;
    prob.variable_names = variable_names(sys);
    prob.bounds = bounds_of(sys);
    prob.n_equalities = 2;
    for (const auto& u : sys.cogen_units) {
        prob.n_inequalities += u.region.size();
    }
    auto shared = std::make_shared<const ChpedSystem>(std::move(sys));
    prob.objective = [shared](std::span<const double> x) { return total_cost(*shared, x); };
    prob.equalities = [shared](std::span<const double> x) {
        const auto r = balance_residuals(*shared, x);
        return std::vector<double> {r.power, r.heat};
    };
    prob.inequalities = [shared](std::span<const double> x) { return all_region_residuals(*shared, x); };
    prob.repair = [shared, slack = choose_slacks(*shared)](std::span<double> x) { repair_balances(*shared, slack, x); };
    return prob;
}

namespace detail {

// Feasible operating region of the 247 MW cogeneration unit (vertices
// (98.8,0), (81,104.8), (215,180), (247,0) in (P,H)).
inline std::vector<PiecewiseHalfPlane> region_unit_a()
{
    return {
        {"g1", GateVariable::heat, {{0.0, 180.0, true, 1.0, 0.177778, -247.0}}},
        {"g2",
         GateVariable::heat,
         {{0.0, 104.8, true, -1.0, -0.16985, 98.8}, {104.8, 180.0, false, -1.0, 1.781915, -105.74468}}},
    };
}

// Feasible operating region of the 125.8 MW cogeneration unit (vertices
// (44,0), (44,15.9), (40,75), (110.2,135.6), (125.8,32.4), (125.8,0)).
// The (44,15.9)-(40,75) edge has slope 4/59.1 = 0.067682.
inline std::vector<PiecewiseHalfPlane> region_unit_b()
{
    return {
        {"g3",
         GateVariable::heat,
         {{0.0, 32.4, true, 1.0, 0.0, -125.8}, {32.4, 135.6, false, 1.0, 0.151163, -130.6977}}},
        {"g4",
         GateVariable::heat,
         {{0.0, 15.9, true, -1.0, 0.0, 44.0},
          {15.9, 75.0, false, -1.0, -0.067682, 45.076142},
          {75.0, 135.6, false, -1.0, 1.1584, -46.8812}}},
    };
}

} // namespace detail

/// Four-unit test system: one power unit, two cogeneration units, one heat unit.
inline ChpedSystem build_case1()
{
    ChpedSystem sys;
    sys.name = "case1";
    sys.power_units = {{"unit1", 0.0, 50.0, 0.0, 0.0, 0.0, 0.0, 150.0}};
    sys.cogen_units = {
        {"unit2", 0.0345, 14.5, 2650.0, 0.03, 4.2, 0.031, {81.0, 274.0}, {0.0, 180.0}, detail::region_unit_a()},
        {"unit3", 0.0435, 36.0, 1250.0, 0.027, 0.6, 0.011, {40.0, 125.8}, {0.0, 135.6}, detail::region_unit_b()},
    };
    sys.heat_units = {{"unit4", 0.0, 23.4, 0.0, 0.0, 2695.2}};
    sys.p_demand = 200.0;
    sys.h_demand = 115.0;
    return sys;
}

/// Seven-unit test system with valve-point effects and transmission losses.
inline ChpedSystem build_case2()
{
    ChpedSystem sys;
    sys.name = "case2";
    sys.power_units = {
        {"unit1", 0.008, 2.0, 25.0, 100.0, 0.042, 10.0, 75.0},
        {"unit2", 0.003, 1.8, 60.0, 140.0, 0.04, 20.0, 125.0},
        {"unit3", 0.0012, 2.1, 100.0, 160.0, 0.038, 30.0, 175.0},
        {"unit4", 0.001, 2.0, 120.0, 180.0, 0.037, 40.0, 250.0},
    };
    sys.cogen_units = {
        {"unit5", 0.0345, 14.5, 2650.0, 0.03, 4.2, 0.031, {81.0, 247.0}, {0.0, 180.0}, detail::region_unit_a()},
        {"unit6", 0.0435, 36.0, 1250.0, 0.027, 0.6, 0.011, {40.0, 125.8}, {0.0, 135.6}, detail::region_unit_b()},
    };
    sys.heat_units = {{"unit7", 0.038, 2.0109, 950.0, 0.0, 60.0}};

    // Loss polynomial in 1e-7 units. Cross terms between P1..P4 and P5/P6 appear
    // once in the expanded polynomial, so they are split across B[i][j] and B[j][i].
    constexpr double k = 1e-7;
    sys.loss = LossModel {
        {
            {49 * k, 14 * k, 15 * k, 15 * k, 10 * k, 12.5 * k},
            {14 * k, 45 * k, 16 * k, 20 * k, 9 * k, 9.5 * k},
            {15 * k, 16 * k, 39 * k, 10 * k, 6 * k, 7.5 * k},
            {15 * k, 20 * k, 10 * k, 40 * k, 7 * k, 5.5 * k},
            {10 * k, 9 * k, 6 * k, 7 * k, 35 * k, 17 * k},
            {12.5 * k, 9.5 * k, 7.5 * k, 5.5 * k, 17 * k, 39 * k},
        },
        {-0.3908e-3, -0.1297e-3, 0.7074e-3, 0.0591e-3, 0.2161e-3, -0.6635e-3},
        0.056,
    };
    sys.p_demand = 600.0;
    sys.h_demand = 150.0;
    return sys;
}

inline ChpedSystem build_case(int case_id)
{
    switch (case_id) {
    case 1:
        return build_case1();
    case 2:
        return build_case2();
    default:
        throw std::invalid_argument("unknown case " + std::to_string(case_id) + " (expected 1 or 2)");
    }
}

} // namespace tsco::chped

#endif // TSCO_CHPED_HPP
