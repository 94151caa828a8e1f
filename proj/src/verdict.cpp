#include "purepair/verdict.hpp"

#include <stdexcept>

namespace purepair
{
    auto verdict_name(Verdict v) -> const char *
    {
        switch (v) {
            case Verdict::holds: return "holds";
            case Verdict::refuted: return "refuted";
            case Verdict::unverified: return "unverified";
        }
        return "?";
    }

    auto verify_mode_name(VerifyMode m) -> const char *
    {
        return m == VerifyMode::exhaustive ? "exhaustive" : "sampled";
    }

    auto parse_verify_mode(const std::string & s) -> VerifyMode
    {
        if (s == "exhaustive")
            return VerifyMode::exhaustive;
        if (s == "sampled")
            return VerifyMode::sampled;
        throw std::invalid_argument("unknown verification mode '" + s + "'");
    }
}
