#pragma once

#include "purepair/execution.hpp"
#include "purepair/fraction.hpp"
#include "purepair/graph.hpp"
#include "purepair/verdict.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace purepair
{
    inline constexpr int default_pattern_budget = 10;

    /**
     * An induced copy of `pattern` in g: result[p] is the image of pattern
     * vertex p. Exact backtracking over the pattern's components in BFS
     * order; edges and non-edges are both enforced. Throws BudgetExceeded
     * when the pattern has more than `pattern_budget` vertices.
     */
    auto find_induced_forest(const Graph & g, const Graph & pattern, int pattern_budget = default_pattern_budget)
        -> std::optional<std::vector<int>>;

    /// Independent check of an induced embedding (injective, adjacency and non-adjacency preserved).
    auto verify_induced(const Graph & g, const Graph & pattern, const std::vector<int> & image) -> std::string;

    enum class PairMode
    {
        exact,
        heuristic
    };

    auto pair_mode_name(PairMode m) -> const char *;

    enum class PairStatus
    {
        found,
        none,
        unknown
    };

    auto pair_status_name(PairStatus s) -> const char *;

    struct AnticompletePair
    {
        PairStatus status = PairStatus::none;
        VertexSet a, b;
        PairMode mode = PairMode::exact;
        std::uint64_t nodes = 0;
    };

    struct PairOptions
    {
        PairMode mode = PairMode::exact;
        Execution execution = Execution::parallel;
        /// Greedy restarts in heuristic mode.
        int restarts = 0;
        std::uint64_t seed = 0;
    };

    /**
     * Disjoint anticomplete A, B with |A| = |B| = k. The best partner of A is
     * V minus (A and its neighbours), so the exact search is over k-sets A
     * alone; it returns the lexicographically smallest such A and the k
     * lowest vertices of its partner. Heuristic mode returns found or unknown.
     */
    auto find_anticomplete_pair(const Graph & g, int k, const PairOptions & opts = {}) -> AnticompletePair;

    struct AnticompleteValue
    {
        int value = 0;
        VertexSet a, b;
    };

    inline constexpr int default_exact_bound = 24;

    /// Largest k admitting an anticomplete pair of size k; exact, n <= bound unless `allow_large`.
    auto max_anticomplete_value(const Graph & g, int bound = default_exact_bound, bool allow_large = false,
        Execution exec = Execution::parallel) -> AnticompleteValue;

    /// ceil(eps * n), at least 1: the size "at least eps |G|" means for vertex counts.
    auto epsilon_threshold(const Fraction & eps, int n) -> int;

    struct CoherenceOptions
    {
        /// Exact pair search up to this many vertices, heuristic above.
        int exact_bound = 64;
        Execution execution = Execution::parallel;
        std::uint64_t seed = 0;
    };

    struct CoherenceVerdict
    {
        Verdict verdict = Verdict::holds;
        /// "order", "degree", "pair", or empty when coherent.
        std::string reason;
        int vertex = -1;
        int degree = 0;
        std::optional<AnticompletePair> pair;
        PairMode pair_mode = PairMode::exact;
    };

    /// |G| > 1, every degree < eps n, and no anticomplete pair of size ceil(eps n).
    auto is_epsilon_coherent(const Graph & g, const Fraction & eps, const CoherenceOptions & opts = {}) -> CoherenceVerdict;

    enum class CertificateKind
    {
        induced_copy,
        high_degree,
        anticomplete_pair,
        not_found
    };

    auto certificate_kind_name(CertificateKind k) -> const char *;

    /// Exit code of the CLI: the enum value.
    inline auto exit_code(CertificateKind k) -> int { return static_cast<int>(k); }

    struct Certificate
    {
        CertificateKind kind = CertificateKind::not_found;
        std::vector<int> embedding;
        int vertex = -1;
        int degree = 0;
        VertexSet a, b;
        /// Threshold ceil(eps n) used for degree and pair sizes.
        int threshold = 0;
        PairMode pair_mode = PairMode::exact;
        /// What was tried, in order.
        std::vector<std::string> log;
    };

    struct CertifyOptions
    {
        int pattern_budget = default_pattern_budget;
        int exact_bound = 64;
        Execution execution = Execution::parallel;
        std::uint64_t seed = 0;
    };

    /// High degree, then an induced copy of the forest, then an anticomplete pair.
    auto certify_trichotomy(const Graph & g, const Graph & forest, const Fraction & eps, const CertifyOptions & opts = {}) -> Certificate;

    /// Independent checker; empty string when the certificate is valid.
    auto verify_certificate(const Graph & g, const Graph & forest, const Fraction & eps, const Certificate & c) -> std::string;

    enum class Polarity
    {
        anticomplete,
        complete
    };

    struct PurePair
    {
        VertexSet a, b;
        Polarity polarity = Polarity::anticomplete;
    };

    /// Anticomplete pair of size k in g, else one in the complement reported as complete.
    auto pure_pair(const Graph & g, int k, Execution exec = Execution::parallel) -> std::optional<PurePair>;
}
