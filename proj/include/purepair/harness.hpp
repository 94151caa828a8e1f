#pragma once

#include "purepair/blockade.hpp"
#include "purepair/certify.hpp"
#include "purepair/fraction.hpp"
#include "purepair/graph.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace purepair
{
    enum class SampleStrategy
    {
        reject,
        excise
    };

    auto sample_strategy_name(SampleStrategy s) -> const char *;
    auto parse_sample_strategy(std::string_view name) -> SampleStrategy;

    inline constexpr int default_sample_iterations = 10'000;

    /**
     * An F-free graph from G(n, p). reject: resample until F-free. excise:
     * delete a uniformly random vertex of a found copy until none is left,
     * so the result may have fewer than n vertices. Throws BudgetExceeded
     * after `max_iterations` draws or deletions.
     */
    auto sample_forest_free(const Graph & forest, int n, double p, std::uint64_t seed, SampleStrategy strategy,
        int max_iterations = default_sample_iterations) -> Graph;

    enum class ExperimentKind
    {
        epsilon_profile,
        multicolour
    };

    struct ExperimentConfig
    {
        ExperimentKind kind = ExperimentKind::epsilon_profile;
        std::string pattern = "P4";
        std::vector<int> n_values{20};
        /// Edge probability; when `degree` > 0, p = degree / n instead.
        double p = 0.1;
        double degree = 0;
        std::vector<Fraction> epsilons{Fraction(1, 20)};
        int samples = 10;
        std::uint64_t seed = 0;
        SampleStrategy strategy = SampleStrategy::reject;
        int exact_bound = default_exact_bound;
        int colours = 2;
        int max_iterations = default_sample_iterations;

        auto edge_probability(int n) const -> double { return degree > 0 ? std::min(1.0, degree / n) : p; }
    };

    /// Validates: seed present, samples >= 1, each epsilon in (0, 1/2].
    auto parse_experiment_config(const nlohmann::json & j) -> ExperimentConfig;
    auto to_json(const ExperimentConfig & c) -> nlohmann::json;
    /// FNV-1a of the canonical JSON dump, as 16 hex digits.
    auto config_fingerprint(const ExperimentConfig & c) -> std::string;

    struct CsvTable
    {
        std::vector<std::string> header;
        std::vector<std::vector<std::string>> rows;

        auto to_string() const -> std::string;
    };

    struct ExperimentOutput
    {
        /// One JSON object per line: samples in index order, then aggregates.
        std::vector<nlohmann::json> records;
        CsvTable samples;
        CsvTable aggregates;
        /// (x, y) points for the plot: n against the aggregate statistic.
        std::vector<std::pair<double, double>> plot;
        std::string plot_title, x_label, y_label;
    };

    inline const std::vector<std::string> profile_columns{"n", "sample", "seed", "vertices", "edges", "max_degree", "a_exact",
        "a_heuristic", "epsilon", "certificate"};
    inline const std::vector<std::string> profile_aggregate_columns{"n", "samples", "min_max_ratio", "min_max_ratio_value"};
    inline const std::vector<std::string> multicolour_columns{"n", "sample", "seed", "colours", "epsilon", "satisfied", "class", "reason"};
    inline const std::vector<std::string> multicolour_aggregate_columns{"n", "epsilon", "trials", "satisfied", "rate"};

    /**
     * For each n and sample: an F-free graph, its max degree and largest
     * anticomplete pair size a(G) (exact up to the bound, greedy above, in
     * separate columns), and the certificate kind per epsilon. Aggregate per
     * n: min over samples of max(Delta/n, a/n).
     */
    auto epsilon_profile(const ExperimentConfig & c, Execution exec = Execution::parallel) -> ExperimentOutput;

    /**
     * Random partitions of E(K_n) into k colour classes; a trial is
     * satisfied at epsilon when some class contains an induced H or has an
     * anticomplete pair of size ceil(eps n).
     */
    auto multicolour_experiment(const ExperimentConfig & c, Execution exec = Execution::parallel) -> ExperimentOutput;

    auto run_experiment(const ExperimentConfig & c, Execution exec = Execution::parallel) -> ExperimentOutput;

    /// Recompute the aggregate records from the sample records (same format as emitted).
    auto reaggregate(const ExperimentConfig & c, const std::vector<nlohmann::json> & records) -> std::vector<nlohmann::json>;

    enum class PlotKind
    {
        scatter,
        line
    };

    /// Standalone SVG; no timestamps, fixed number formatting. Throws on empty input.
    auto render_svg(const std::vector<std::pair<double, double>> & points, PlotKind kind, const std::string & title,
        const std::string & x_label, const std::string & y_label) -> std::string;

    /**
     * Writes <prefix>.jsonl, <prefix>.csv, <prefix>.aggregate.csv,
     * <prefix>.svg and the <prefix>.meta.json sidecar (run metadata lives
     * only there). Returns the paths written.
     */
    auto write_experiment(const std::string & prefix, const ExperimentConfig & c, const ExperimentOutput & out,
        const nlohmann::json & meta) -> std::vector<std::string>;

    /// {"graph": graph6, "blocks": [[v, ...], ...], "indices": [...]}; indices default to 1..K.
    auto blockade_to_json(const Blockade & b) -> nlohmann::json;
    auto blockade_from_json(const nlohmann::json & j) -> Blockade;

    auto certificate_to_json(const Certificate & c) -> nlohmann::json;
}
