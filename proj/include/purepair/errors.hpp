#pragma once

#include <stdexcept>
#include <string>

namespace purepair
{
    /// A search or verification would exceed its configured budget.
    class BudgetExceeded : public std::runtime_error
    {
    public:
        explicit BudgetExceeded(const std::string & what) :
            std::runtime_error("budget exceeded: " + what)
        {
        }
    };

    /// Fewer surviving blocks than the requested sub-blockade length.
    class InsufficientLength : public std::runtime_error
    {
    public:
        explicit InsufficientLength(const std::string & what) :
            std::runtime_error("insufficient length: " + what)
        {
        }
    };

    /// Input text (graph6, edge list, pattern, JSON) could not be parsed.
    class ParseError : public std::runtime_error
    {
    public:
        explicit ParseError(const std::string & what) :
            std::runtime_error("parse error: " + what)
        {
        }
    };
}
