#pragma once

#include "purepair/blockade.hpp"
#include "purepair/concavity.hpp"
#include "purepair/fraction.hpp"
#include "purepair/rainbow.hpp"
#include "purepair/trace.hpp"
#include "purepair/trees.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace purepair
{
    struct DescentStep
    {
        std::uint64_t cost_before = 0, cost_after = 0;
        int width_before = 0, width_after = 0;
        std::string tree;
        Support support;
        bool heuristic = false;
    };

    struct DescentOptions
    {
        ShrinkSearchOptions search;
        /// Used by get_minor to re-check invariance of its output.
        VerifyOptions verify;
        int max_steps = 100'000;
    };

    struct DescentResult
    {
        Blockade blockade;
        std::vector<DescentStep> steps;
        std::uint64_t initial_cost = 0, final_cost = 0;
        /// holds: verified invariant; unverified: the search gave up on some target.
        Verdict verdict = Verdict::holds;
        std::string note;
    };

    /**
     * Repeatedly replace B by an equicardinal contraction of width
     * ceil(kappa * width) that removes some support from some trace, until
     * no such contraction is found. Each step strictly lowers the tau-cost.
     */
    auto cost_descent(const Blockade & b, const Fraction & kappa, int tau, const DescentOptions & opts = {}, TraceMemo * memo = nullptr)
        -> DescentResult;

    struct ExtractOptions
    {
        /// Branch-and-bound nodes per tree when searching for a large homogeneous index set.
        std::uint64_t node_budget = 2'000'000;
        Execution execution = Execution::parallel;
    };

    struct ExtractResult
    {
        Blockade blockade;
        /// Surviving index count after each tree, in canonical tree order.
        std::vector<std::pair<std::string, int>> rounds;
        bool budget_hit = false;
    };

    /**
     * For each ordered tree (canonical order) keep a largest set of indices
     * all of whose |J|-subsets are in the trace, or all out of it; then take
     * the first k survivors. Throws InsufficientLength when fewer than k
     * survive.
     */
    auto extract_support_uniform(const Blockade & b, int k, int tau, const ExtractOptions & opts = {}, TraceMemo * memo = nullptr)
        -> ExtractResult;

    struct MinorResult
    {
        DescentResult descent;
        ExtractResult extract;
        Blockade blockade;
        UniformityVerdict uniform;
        InvarianceVerdict invariant;
    };

    /// cost_descent, then extract_support_uniform, then both properties re-checked on the result.
    auto get_minor(const Blockade & b, int k, const Fraction & kappa, int tau, const DescentOptions & dopts = {}, const ExtractOptions & eopts = {},
        TraceMemo * memo = nullptr) -> MinorResult;

    struct LeafQuery
    {
        /// The ordering J of T minus a leaf.
        OrderedTree j;
        /// Label (0-based) of the leaf's neighbour in J.
        int attach = 0;
    };

    struct LeafFamily
    {
        bool single_blocks = true;
        bool block_pairs = true;
        bool slices = true;
        /// Exhaustive subsets of V(B) minus the chosen blocks when 2^size is at most this.
        std::uint64_t exhaustive_limit = 1 << 12;
        /// Candidate sets examined in total before giving up.
        std::uint64_t budget = 5'000'000;
    };

    struct LeafExtension
    {
        /// Labels 0..t-1 follow J; label t is the new leaf.
        RainbowEmbedding embedding;
        Graph pattern;
        std::vector<int> positions;
        VertexSet x;
    };

    /**
     * Look for positions r_1 < ... < r_t and a set X avoiding those blocks
     * that kappa-covers block r_j and kappa-misses the others; then find J in
     * the resulting contraction and hang a neighbour from X on the attach
     * vertex.
     */
    auto find_leaf_extension(const Blockade & b, const LeafQuery & q, const Fraction & kappa, const LeafFamily & family = {},
        Execution exec = Execution::parallel) -> std::optional<LeafExtension>;

    struct PipelineFinding
    {
        std::string phase;
        std::string claim;
        std::string detail;
    };

    struct ConcaveOutcome
    {
        std::optional<RainbowEmbedding> copy;
        /// Tree vertex -> embedding label, for the early-exit copy.
        std::vector<int> tree_to_label;
        std::optional<Blockade> grouped;
        ConcavityVerdict concavity;
        std::uint64_t orderings_tried = 0;
    };

    /// One leaf of T and its neighbour; both chosen deterministically (largest-numbered leaf).
    auto choose_leaf(const Graph & tree) -> std::pair<int, int>;

    /**
     * Try every ordering of T minus a leaf with nonempty trace as a leaf
     * extension; if none works, group consecutive runs of r blocks and check
     * lambda-concavity of the result.
     */
    auto build_concave(const Blockade & b, const Graph & tree, const Fraction & kappa, const Fraction & lambda, int r, const LeafFamily & family,
        const VerifyOptions & concave_opts, TraceMemo * memo = nullptr) -> ConcaveOutcome;

    /// Largest a (resp. b) with a left- (resp. right-) rainbow T(delta, a).
    auto left_right_radius(const Blockade & b, int delta) -> std::pair<int, int>;

    /**
     * Candidate (gamma1, gamma2)-anchored minor. Blocks are listed with their
     * indices, which must be 1..k followed by K.
     */
    struct AnchoredMinor
    {
        std::vector<Block> blocks;
        int k = 0;
        VertexSet y;
        int gamma1 = 0, gamma2 = 0;
    };

    struct AnchoredVerdict
    {
        bool anchored = true;
        /// 1-5, the first failing condition; 0 when anchored.
        int failing = 0;
        std::string diagnostic;
    };

    /// Check all five anchoring conditions against the blockade (indices 1..K).
    auto is_anchored(const Blockade & b, const AnchoredMinor & m, int delta, int alpha, int beta) -> AnchoredVerdict;

    struct EscalationParams
    {
        int delta = 2;
        int eta = 1;
        Fraction lambda = Fraction(1, 4);
        /// Invariance ratio of the input (2^-9delta in paper mode).
        Fraction invariance = Fraction(1, 4);
        /// Coherence parameter; claims that mention it are skipped when absent.
        std::optional<Fraction> epsilon;
        std::uint64_t order_samples = 10'000;
        std::uint64_t seed = 0;
        int max_rounds = 64;
        bool use_fallback = true;
    };

    struct EscalationRound
    {
        int gamma1 = 0, gamma2 = 0, gamma3 = 0;
        int k = 0, h = 0, s = 0, t = 0;
        int width = 0;
        std::int64_t r_parallel = 0;
        int copies_e = 0, copies_f = 0;
        int a_d = 0, b_d = 0, d_size = 0, z_size = 0, c_size = 0;
        std::uint64_t orders_tried = 0;
        int m = 0;
        std::string type;
        int u_size = 0;
        int new_width = 0;
        bool anchored_after = false;
    };

    struct EscalationResult
    {
        std::optional<RainbowEmbedding> embedding;
        /// How the embedding was obtained, or why there is none.
        std::string outcome;
        std::string diagnostic;
        int alpha = 0, beta = 0, gamma3 = 0;
        bool reversed = false;
        int max_gamma0 = 0;
        std::vector<EscalationRound> rounds;
        std::vector<PipelineFinding> findings;
    };

    /**
     * The escalation argument run as a search on an equicardinal blockade
     * indexed 1..K: grow anchored minors, checking every intermediate claim
     * on the instance, until a rainbow T(delta, eta) is produced or a claim
     * fails (reported as a finding, with a diagnostic).
     */
    auto anchored_escalation(const Blockade & c, const EscalationParams & params) -> EscalationResult;

    enum class PipelineMode
    {
        paper,
        toy
    };

    struct PipelineParams
    {
        PipelineMode mode = PipelineMode::toy;
        int delta = 2;
        int eta = 1;
        Fraction lambda = Fraction(1, 4);
        Fraction kappa = Fraction(1, 2);
        Fraction invariance = Fraction(1, 4);
        int tau = 3;
        int r_group = 2;
        /// Length of the uniform minor (a multiple of r_group); 0 picks the largest multiple that fits.
        int minor_length = 0;
        std::optional<Fraction> epsilon;
        DescentOptions descent;
        ExtractOptions extract;
        LeafFamily leaf;
        VerifyOptions concavity{VerifyMode::sampled, 10'000, 0, Execution::parallel};
        std::uint64_t order_samples = 10'000;
        std::uint64_t seed = 0;
        bool skip_fallback = false;
        /// Which fields were overridden, recorded in the log.
        std::vector<std::string> overrides;
    };

    /// Paper-mode constants for a tree: lambda = 2^-9delta delta^(-1-eta), kappa = lambda/2, tau = delta^(eta+1), r = ceil((|T|-1)/kappa).
    auto paper_params(int delta, int eta, int tree_size) -> PipelineParams;

    /// Smallest (delta, eta) with delta >= 2 such that T(delta, eta) contains the tree, and the root achieving it.
    struct TreeShape
    {
        int delta, eta, root;
    };
    auto tree_shape(const Graph & tree) -> TreeShape;

    struct PipelineResult
    {
        std::optional<RainbowEmbedding> embedding;
        std::string stopped_phase;
        std::string outcome;
        std::vector<nlohmann::json> log;
        std::vector<PipelineFinding> findings;
    };

    auto rainbow_pipeline(const Blockade & b, const Graph & tree, const PipelineParams & params) -> PipelineResult;
}
