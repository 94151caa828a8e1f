#pragma once

#include "purepair/execution.hpp"

#include <cstdint>
#include <string>

namespace purepair
{
    enum class Verdict
    {
        holds,
        refuted,
        unverified
    };

    auto verdict_name(Verdict v) -> const char *;

    enum class VerifyMode
    {
        exhaustive,
        sampled
    };

    auto verify_mode_name(VerifyMode m) -> const char *;
    /// "exhaustive" or "sampled"; throws std::invalid_argument otherwise.
    auto parse_verify_mode(const std::string & s) -> VerifyMode;

    /**
     * Controls how a universally quantified property is checked. Exhaustive
     * runs throw BudgetExceeded once more than `budget` cases would be
     * needed; sampled runs look at `budget` cases and can only refute.
     */
    struct VerifyOptions
    {
        VerifyMode mode = VerifyMode::exhaustive;
        std::uint64_t budget = 10'000'000;
        std::uint64_t seed = 0;
        Execution execution = Execution::parallel;
    };
}
