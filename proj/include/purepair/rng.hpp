#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <utility>

namespace purepair
{
    /// Bumped whenever any sampling routine below changes its output stream.
    inline constexpr int rng_version = 1;

    /// splitmix64 finaliser; used to derive independent per-task seeds.
    constexpr auto mix_seed(std::uint64_t x) -> std::uint64_t
    {
        x += 0x9e3779b97f4a7c15ULL;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
        return x ^ (x >> 31);
    }

    /// Seed for the `index`-th independent task spawned from `seed`.
    constexpr auto derive_seed(std::uint64_t seed, std::uint64_t index) -> std::uint64_t
    {
        return mix_seed(seed ^ mix_seed(index + 1));
    }

    /**
     * Seeded generator with platform-independent output.
     *
     * The engine is mt19937_64, whose output sequence is fixed by the
     * standard; the distributions are implemented here because the standard
     * library ones are allowed to differ between implementations.
     */
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) :
            _engine(mix_seed(seed))
        {
        }

        auto next_u64() -> std::uint64_t { return _engine(); }

        /// Uniform in [0, 1) with 53 bits of precision.
        auto uniform01() -> double
        {
            return static_cast<double>(_engine() >> 11) * 0x1.0p-53;
        }

        auto bernoulli(double p) -> bool
        {
            if (p <= 0.0)
                return false;
            if (p >= 1.0)
                return true;
            return uniform01() < p;
        }

        /// Uniform in [0, bound), bound >= 1; rejection sampling, no modulo bias.
        auto below(std::uint64_t bound) -> std::uint64_t
        {
            if (bound <= 1)
                return 0;
            std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
            while (true) {
                auto x = _engine();
                if (x < limit)
                    return x % bound;
            }
        }

        template <typename T>
        auto shuffle(std::span<T> items) -> void
        {
            for (std::size_t i = items.size(); i > 1; --i) {
                auto j = static_cast<std::size_t>(below(i));
                std::swap(items[i - 1], items[j]);
            }
        }

    private:
        std::mt19937_64 _engine;
    };
}
