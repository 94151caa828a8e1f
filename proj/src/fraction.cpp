#include "purepair/fraction.hpp"
#include "purepair/errors.hpp"

#include <numeric>
#include <stdexcept>

namespace purepair
{
    namespace
    {
        using Wide = __int128;

        auto narrow(Wide v, const char * what) -> std::int64_t
        {
            if (v > INT64_MAX || v < INT64_MIN)
                throw std::overflow_error(std::string("Fraction overflow in ") + what);
            return static_cast<std::int64_t>(v);
        }

        auto reduced(Wide num, Wide den, const char * what) -> Fraction
        {
            if (den == 0)
                throw std::invalid_argument("Fraction: zero denominator");
            if (den < 0) {
                num = -num;
                den = -den;
            }
            Wide a = num < 0 ? -num : num, b = den;
            while (b != 0) {
                Wide t = a % b;
                a = b;
                b = t;
            }
            if (a > 1) {
                num /= a;
                den /= a;
            }
            return Fraction(narrow(num, what), narrow(den, what));
        }
    }

    Fraction::Fraction(std::int64_t num, std::int64_t den)
    {
        if (den == 0)
            throw std::invalid_argument("Fraction: zero denominator");
        if (num < 0 || den < 0) {
            if ((num < 0) != (den < 0))
                throw std::invalid_argument("Fraction: negative value");
            num = -num;
            den = -den;
        }
        auto g = std::gcd(num, den);
        _num = num / g;
        _den = den / g;
    }

    auto Fraction::parse(std::string_view text) -> Fraction
    {
        auto digits = [&](std::string_view s) -> std::int64_t {
            if (s.empty() || s.size() > 18)
                throw ParseError("bad fraction '" + std::string(text) + "'");
            std::int64_t v = 0;
            for (char c : s) {
                if (c < '0' || c > '9')
                    throw ParseError("bad fraction '" + std::string(text) + "'");
                v = v * 10 + (c - '0');
            }
            return v;
        };

        if (auto slash = text.find('/'); slash != std::string_view::npos)
            return Fraction(digits(text.substr(0, slash)), digits(text.substr(slash + 1)));

        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            auto whole = text.substr(0, dot);
            auto frac = text.substr(dot + 1);
            std::int64_t den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i)
                den *= 10;
            std::int64_t w = whole.empty() ? 0 : digits(whole);
            std::int64_t f = frac.empty() ? 0 : digits(frac);
            return Fraction(w * den + f, den);
        }

        return Fraction(digits(text), 1);
    }

    auto Fraction::ceil_times(std::int64_t n) const -> std::int64_t
    {
        Wide p = static_cast<Wide>(_num) * n;
        Wide q = _den;
        Wide r = p >= 0 ? (p + q - 1) / q : -((-p) / q);
        return narrow(r, "ceil_times");
    }

    auto Fraction::floor_times(std::int64_t n) const -> std::int64_t
    {
        Wide p = static_cast<Wide>(_num) * n;
        Wide q = _den;
        Wide r = p >= 0 ? p / q : -((-p + q - 1) / q);
        return narrow(r, "floor_times");
    }

    auto Fraction::le_ratio(std::int64_t value, std::int64_t n) const -> bool
    {
        return static_cast<Wide>(value) * _den >= static_cast<Wide>(_num) * n;
    }

    auto Fraction::to_string() const -> std::string
    {
        if (_den == 1)
            return std::to_string(_num);
        return std::to_string(_num) + "/" + std::to_string(_den);
    }

    auto operator*(const Fraction & a, const Fraction & b) -> Fraction
    {
        return reduced(static_cast<Wide>(a._num) * b._num, static_cast<Wide>(a._den) * b._den, "multiply");
    }

    auto operator/(const Fraction & a, const Fraction & b) -> Fraction
    {
        return reduced(static_cast<Wide>(a._num) * b._den, static_cast<Wide>(a._den) * b._num, "divide");
    }

    auto operator<=>(const Fraction & a, const Fraction & b) -> std::strong_ordering
    {
        Wide l = static_cast<Wide>(a._num) * b._den, r = static_cast<Wide>(b._num) * a._den;
        if (l < r)
            return std::strong_ordering::less;
        if (l > r)
            return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }
}
