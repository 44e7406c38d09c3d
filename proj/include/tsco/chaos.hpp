#ifndef TSCO_CHAOS_HPP
#define TSCO_CHAOS_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tsco {

/// One step of the tent map on [0,1]: 2x for x <= 1/2, 2(1-x) otherwise.
inline double tent_next(double x)
{
    if (!(x >= 0.0 && x <= 1.0)) {
        throw std::domain_error("tent_next: input " + std::to_string(x) + " outside [0,1]");
    }
    return x <= 0.5 ? 2.0 * x : 2.0 * (1.0 - x);
}

/// True for the fixed and unstable points the tent map collapses through.
inline bool is_forbidden_tent_value(double x) noexcept
{
    return x == 0.0 || x == 0.25 || x == 0.5 || x == 0.75 || x == 1.0;
}

/**
 * Deterministic chaotic number stream driven by the tent map.
 *
 * The state is kept as an exact integer numerator over an odd prime modulus,
 * so the orbit never loses precision the way a double-precision tent map
 * does (that one decays onto dyadic rationals within ~55 steps). The modulus
 * has 2 as a primitive root, which gives an orbit period of about 2^61.
 *
 * Each step applies the map, then nudges the value by `epsilon` (wrapping
 * past 1) for as long as it lands on a forbidden point or repeats one of the
 * previous four emitted values.
 */
class ChaosStream {
public:
    static constexpr std::uint64_t modulus = 4611686018427387787ULL;
    static constexpr double default_epsilon = 1e-3;
    static constexpr int default_warmup = 300;

    explicit ChaosStream(double seed, int warmup = default_warmup, double epsilon = default_epsilon)
        : epsilon_(epsilon), warmup_(warmup)
    {
        if (!(seed > 0.0 && seed < 1.0) || is_forbidden_tent_value(seed)) {
            throw std::invalid_argument("ChaosStream: forbidden seed " + std::to_string(seed)
                                        + " (must lie in (0,1) and avoid 0.25, 0.5, 0.75)");
        }
        if (!(epsilon > 0.0 && epsilon < 1.0)) {
            throw std::invalid_argument("ChaosStream: epsilon must lie in (0,1)");
        }
        if (warmup < 0) {
            throw std::invalid_argument("ChaosStream: negative warm-up count");
        }
        nudge_ = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::llround(epsilon * static_cast<double>(modulus))));
        state_ = std::clamp<std::uint64_t>(static_cast<std::uint64_t>(std::llround(seed * static_cast<double>(modulus))), 1, modulus - 1);
        value_ = to_unit(state_);
        for (int i = 0; i < warmup; ++i) {
            advance();
        }
    }

    /// Current value of the orbit in (0,1).
    [[nodiscard]] double current() const noexcept { return value_; }
    [[nodiscard]] int warmup_count() const noexcept { return warmup_; }
    [[nodiscard]] double epsilon() const noexcept { return epsilon_; }

    /// Advances the orbit and returns the new value in (0,1).
    double next()
    {
        advance();
        return value_;
    }

    /// Maps the next chaotic value onto [lo, hi].
    double draw(double lo, double hi)
    {
        if (!(lo <= hi)) {
            throw std::domain_error("ChaosStream::draw: lower end exceeds upper end");
        }
        const double x = next();
        const double v = lo + x * (hi - lo);
        return std::clamp(v, lo, hi);
    }

    /// Chaotic index in [0, n).
    std::size_t draw_index(std::size_t n)
    {
        if (n == 0) {
            throw std::domain_error("ChaosStream::draw_index: empty range");
        }
        const auto i = static_cast<std::size_t>(next() * static_cast<double>(n));
        return std::min(i, n - 1);
    }

private:
    static double to_unit(std::uint64_t n) noexcept
    {
        return static_cast<double>(n) / static_cast<double>(modulus);
    }

    bool seen_recently(double x) const noexcept
    {
        return std::find(history_.begin(), history_.begin() + history_size_, x) != history_.begin() + history_size_;
    }

    void advance()
    {
        std::uint64_t n = 2 * state_ < modulus ? 2 * state_ : 2 * (modulus - state_);
        double x = to_unit(n);
        while (n == 0 || is_forbidden_tent_value(x) || seen_recently(x) || x == value_) {
            n += nudge_;
            if (n >= modulus) {
                n -= modulus;
            }
            x = to_unit(n);
        }
        push_history(value_);
        state_ = n;
        value_ = x;
    }

    void push_history(double x) noexcept
    {
        if (history_size_ < history_.size()) {
            history_[history_size_++] = x;
            return;
        }
        std::shift_left(history_.begin(), history_.end(), 1);
        history_.back() = x;
    }

    double epsilon_;
    int warmup_;
    std::uint64_t nudge_ = 1;
    std::uint64_t state_ = 1;
    double value_ = 0.0;
    // The four values emitted before `value_`.
    std::array<double, 4> history_ {};
    std::size_t history_size_ = 0;
};

} // namespace tsco

#endif // TSCO_CHAOS_HPP
