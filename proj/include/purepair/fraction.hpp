#pragma once

#include <cstdint>
#include <compare>
#include <string>
#include <string_view>

namespace purepair
{
    /**
     * Exact non-negative rational p/q, always reduced, q > 0.
     *
     * Every combinatorial threshold ("at least λw", "degree less than εn")
     * goes through this type so that boundary cases never depend on
     * floating point rounding.
     */
    class Fraction
    {
    public:
        constexpr Fraction() = default;
        Fraction(std::int64_t num, std::int64_t den);

        static auto integer(std::int64_t v) -> Fraction { return Fraction(v, 1); }

        /// Accepts "p/q", integers, and finite decimals such as "0.05".
        static auto parse(std::string_view text) -> Fraction;

        auto num() const -> std::int64_t { return _num; }
        auto den() const -> std::int64_t { return _den; }

        /// ceil(this * n)
        auto ceil_times(std::int64_t n) const -> std::int64_t;
        /// floor(this * n)
        auto floor_times(std::int64_t n) const -> std::int64_t;

        /// value >= this * n, exactly
        auto le_ratio(std::int64_t value, std::int64_t n) const -> bool;
        /// value < this * n, exactly
        auto gt_ratio(std::int64_t value, std::int64_t n) const -> bool { return ! le_ratio(value, n); }

        auto to_double() const -> double { return static_cast<double>(_num) / static_cast<double>(_den); }
        auto to_string() const -> std::string;

        friend auto operator*(const Fraction & a, const Fraction & b) -> Fraction;
        friend auto operator/(const Fraction & a, const Fraction & b) -> Fraction;
        friend auto operator==(const Fraction & a, const Fraction & b) -> bool = default;
        friend auto operator<=>(const Fraction & a, const Fraction & b) -> std::strong_ordering;

    private:
        std::int64_t _num = 0;
        std::int64_t _den = 1;
    };
}
