#pragma once

#include "purepair/blockade.hpp"
#include "purepair/fraction.hpp"
#include "purepair/trees.hpp"
#include "purepair/verdict.hpp"

#include <cstdint>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace purepair
{
    /// The supports of all rainbow copies of one ordered tree, sorted lexicographically.
    struct Trace
    {
        std::string tree;
        int tree_size = 0;
        std::vector<Support> supports;

        auto contains(const Support & s) const -> bool;
        auto count() const -> std::size_t { return supports.size(); }
        auto empty() const -> bool { return supports.empty(); }
    };

    /**
     * Exact trace: one fixed-support search per |J|-subset of indices.
     * Empty when |J| exceeds the length.
     */
    auto trace(const Blockade & b, const OrderedTree & j, Execution exec = Execution::parallel) -> Trace;

    /// Thread-safe cache of traces keyed by (blockade fingerprint, tree code).
    class TraceMemo
    {
    public:
        auto get(const Blockade & b, const OrderedTree & j, Execution exec = Execution::parallel) -> Trace;
        auto size() const -> std::size_t;
        auto hits() const -> std::uint64_t { return _hits; }

    private:
        mutable std::mutex _lock;
        std::unordered_map<std::string, Trace> _table;
        std::uint64_t _hits = 0;
    };

    /// Number of |J|-subsets of the index set, i.e. the size of a complete trace.
    auto complete_trace_size(int length, int tree_size) -> std::uint64_t;

    struct UniformityVerdict
    {
        bool uniform = true;
        /// For a non-uniform blockade: the tree, one support in its trace and one missing from it.
        std::string tree;
        Support present, absent;
    };

    auto is_support_uniform(const Blockade & b, int tau, Execution exec = Execution::parallel, TraceMemo * memo = nullptr)
        -> UniformityVerdict;

    /// Sum over ordered trees with at most tau vertices of the trace size.
    auto tau_cost(const Blockade & b, int tau, Execution exec = Execution::parallel, TraceMemo * memo = nullptr) -> std::uint64_t;

    /// Smallest block size a contraction may have and still count: ceil(kappa * width), at least 1.
    auto contraction_floor(const Fraction & kappa, int width) -> int;

    /// A contraction that kills the given support from the given tree's trace.
    struct TraceShrink
    {
        std::string tree;
        Support support;
        std::map<int, VertexSet> shrink;
        bool heuristic = false;
    };

    struct InvarianceVerdict
    {
        Verdict verdict = Verdict::holds;
        std::optional<TraceShrink> witness;
        /// Fixed-support searches performed.
        std::uint64_t checked = 0;
        std::string note;
    };

    /**
     * (kappa, tau)-support-invariance.
     *
     * Traces only shrink under contraction, and a support S of J survives a
     * contraction iff some copy lies in the shrunken blocks of S. So it is
     * enough to try, for every J and every S in its trace, every way of
     * cutting the blocks of S to exactly ceil(kappa * width) vertices. The
     * exhaustive budget counts those cuts.
     */
    auto is_support_invariant(const Blockade & b, const Fraction & kappa, int tau, const VerifyOptions & opts = {},
        TraceMemo * memo = nullptr) -> InvarianceVerdict;

    /// Number of cuts the exhaustive invariance check would try (saturating).
    auto invariance_case_count(const Blockade & b, const Fraction & kappa, int tau, TraceMemo * memo = nullptr) -> std::uint64_t;

    struct ShrinkSearchOptions
    {
        /// Targets with at most this many cuts are searched exhaustively.
        std::uint64_t exhaustive_limit = 200'000;
        /// Random cuts tried per target otherwise, after the structured ones.
        std::uint64_t samples = 2'000;
        std::uint64_t seed = 0;
        Execution execution = Execution::parallel;
    };

    struct ShrinkSearchResult
    {
        std::optional<TraceShrink> found;
        /// Every target was searched exhaustively (so "none found" is authoritative).
        bool exhaustive = true;
        std::uint64_t checked = 0;
    };

    /**
     * Search the targets (J, S), J in canonical order and S in trace order,
     * for the first one that some cut kills. Used by cost descent.
     */
    auto find_trace_shrink(const Blockade & b, const Fraction & kappa, int tau, const ShrinkSearchOptions & opts = {},
        TraceMemo * memo = nullptr) -> ShrinkSearchResult;
}
