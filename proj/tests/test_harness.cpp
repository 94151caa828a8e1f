#include "oracles.hpp"

#include "purepair/errors.hpp"
#include "purepair/graph_io.hpp"
#include "purepair/harness.hpp"
#include "purepair/patterns.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace purepair;

namespace
{
    auto slurp(const std::string & path) -> std::string
    {
        std::ifstream in(path, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    auto dump(const ExperimentOutput & out) -> std::string
    {
        std::string s;
        for (auto & r : out.records)
            s += r.dump() + "\n";
        return s + out.samples.to_string() + out.aggregates.to_string();
    }
}

TEST_SUITE("harness")
{
    TEST_CASE("forest-free sampling")
    {
        auto e = sample_forest_free(path_graph(2), 15, 0.3, 4, SampleStrategy::excise);
        CHECK(e.edge_count() == 0);
        auto r = sample_forest_free(path_graph(2), 15, 0.0, 4, SampleStrategy::reject);
        CHECK(r.size() == 15);
        CHECK(r.edge_count() == 0);
        for (std::uint64_t s = 0; s < 20; ++s) {
            auto g = sample_forest_free(path_graph(4), 14, 0.15, s, SampleStrategy::excise);
            CHECK(! oracle::induced_copy(g, path_graph(4)));
            CHECK(g == sample_forest_free(path_graph(4), 14, 0.15, s, SampleStrategy::excise));
        }
        CHECK_THROWS_AS(sample_forest_free(path_graph(2), 20, 0.9, 1, SampleStrategy::reject, 5), BudgetExceeded);
        CHECK(parse_sample_strategy("excise") == SampleStrategy::excise);
        CHECK_THROWS(parse_sample_strategy("rejection"));
    }

    TEST_CASE("config parsing")
    {
        auto c = parse_experiment_config(nlohmann::json::parse(
            R"({"kind":"epsilon_profile","pattern":"P5","n_min":20,"n_max":30,"n_step":5,"epsilon":["1/20","0.1"],"samples":3,"seed":9})"));
        CHECK(c.n_values == std::vector<int>{20, 25, 30});
        CHECK(c.epsilons == std::vector<Fraction>{Fraction(1, 20), Fraction(1, 10)});
        CHECK(c.seed == 9);
        CHECK(parse_experiment_config(to_json(c)).n_values == c.n_values);
        CHECK(config_fingerprint(parse_experiment_config(to_json(c))) == config_fingerprint(c));
        CHECK(config_fingerprint(c).size() == 16);
        CHECK_THROWS_AS(parse_experiment_config(nlohmann::json::parse(R"({"pattern":"P4"})")), ParseError);
        CHECK_THROWS_AS(parse_experiment_config(nlohmann::json::parse(R"({"seed":1,"colors":2})")), ParseError);
        CHECK_THROWS_AS(parse_experiment_config(nlohmann::json::parse(R"({"seed":1,"epsilon":"3/4"})")), ParseError);
        CHECK_THROWS_AS(parse_experiment_config(nlohmann::json::parse(R"({"seed":1,"samples":0})")), ParseError);
    }

    TEST_CASE("epsilon profile")
    {
        ExperimentConfig c;
        c.pattern = "edge";
        c.n_values = {10, 11};
        c.p = 0.3;
        c.strategy = SampleStrategy::excise;
        c.samples = 4;
        c.seed = 5;
        auto out = epsilon_profile(c, Execution::serial);
        for (auto & r : out.records)
            if (r["kind"] == "sample") {
                CHECK(r["max_degree"] == 0);
                CHECK(r["a_exact"] == r["vertices"].get<int>() / 2);
            }
        CHECK(out.samples.header == profile_columns);
        CHECK(out.aggregates.header == profile_aggregate_columns);

        ExperimentConfig p4;
        p4.pattern = "P4";
        p4.n_values = {20};
        p4.degree = 1.5;
        p4.strategy = SampleStrategy::excise;
        p4.samples = 100;
        p4.seed = 2;
        auto prof = epsilon_profile(p4);
        int aggregates = 0;
        for (auto & r : prof.records)
            if (r["kind"] == "aggregate") {
                ++aggregates;
                CHECK(Fraction(1, 20) <= Fraction::parse(r["min_max_ratio"].get<std::string>()));
            }
        CHECK(aggregates == 1);

        std::vector<nlohmann::json> emitted, samples;
        for (auto & r : prof.records)
            (r["kind"] == "aggregate" ? emitted : samples).push_back(r);
        CHECK(reaggregate(p4, samples) == emitted);
        CHECK(dump(prof) == dump(epsilon_profile(p4, Execution::serial)));
    }

    TEST_CASE("multicolour experiment")
    {
        ExperimentConfig c;
        c.kind = ExperimentKind::multicolour;
        c.pattern = "edge";
        c.colours = 1;
        c.n_values = {6};
        c.samples = 5;
        c.seed = 1;
        for (auto & r : multicolour_experiment(c).records)
            if (r["kind"] == "aggregate")
                CHECK(r["rate"] == "1");

        c.pattern = "P4";
        c.colours = 2;
        c.n_values = {8, 12, 14};
        c.epsilons = {Fraction(1, 14)};
        c.samples = 10;
        auto out = multicolour_experiment(c);
        CHECK(out.samples.header == multicolour_columns);
        CHECK(out.aggregates.header == multicolour_aggregate_columns);
        for (auto & r : out.records)
            if (r["kind"] == "aggregate")
                CHECK(r["satisfied"] == r["trials"]);
        CHECK(dump(out) == dump(multicolour_experiment(c, Execution::serial)));
        std::vector<nlohmann::json> emitted, samples;
        for (auto & r : out.records)
            (r["kind"] == "aggregate" ? emitted : samples).push_back(r);
        CHECK(reaggregate(c, samples) == emitted);
    }

    TEST_CASE("plots and csv")
    {
        auto one = render_svg({{20, 0.1}}, PlotKind::scatter, "t", "n", "y");
        CHECK(one.rfind("<?xml", 0) == 0);
        CHECK(one.find("<svg") != std::string::npos);
        CHECK(one.find("</svg>") != std::string::npos);
        CHECK(one.find("<circle") != std::string::npos);
        CHECK(one == render_svg({{20, 0.1}}, PlotKind::scatter, "t", "n", "y"));
        CHECK(render_svg({{1, 1}, {2, 3}}, PlotKind::line, "a & b", "x", "y").find("a &amp; b") != std::string::npos);
        CHECK_THROWS(render_svg({}, PlotKind::line, "t", "x", "y"));

        CsvTable t{{"a", "b"}, {{"1", "x,y"}}};
        CHECK(t.to_string() == "a,b\n1,\"x,y\"\n");
    }

    TEST_CASE("experiment files")
    {
        ExperimentConfig c;
        c.pattern = "P4";
        c.n_values = {12};
        c.degree = 1.5;
        c.strategy = SampleStrategy::excise;
        c.samples = 3;
        c.seed = 4;
        auto dir = std::filesystem::temp_directory_path() / "purepair-harness-test";
        std::filesystem::create_directories(dir);
        auto a = (dir / "a").string(), b = (dir / "b").string();
        auto out = run_experiment(c);
        auto files = write_experiment(a, c, out, {{"wall_seconds", 1.0}});
        write_experiment(b, c, run_experiment(c), {{"wall_seconds", 2.0}});
        CHECK(files.size() == 5);
        for (auto ext : {".jsonl", ".csv", ".aggregate.csv", ".svg"})
            CHECK(slurp(a + ext) == slurp(b + ext));
        CHECK(slurp(a + ".meta.json") != slurp(b + ".meta.json"));
        CHECK(slurp(a + ".csv").rfind("n,sample,seed,vertices,edges,max_degree,a_exact,a_heuristic,epsilon,certificate\n", 0) == 0);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("blockade and certificate json")
    {
        auto b = oracle::random_ragged_blockade(4, 3, 0.4, 3);
        auto j = blockade_to_json(b);
        CHECK(j["graph"] == to_graph6(b.host()));
        CHECK(blockade_from_json(j) == b);
        auto plain = nlohmann::json::parse(R"({"graph":"Ch","blocks":[[0],[1,2]]})");
        auto p = blockade_from_json(plain);
        CHECK(p.indices() == std::vector<int>{1, 2});
        CHECK_THROWS(blockade_from_json(nlohmann::json::parse(R"({"graph":"Ch","blocks":[[0],[0]]})")));

        auto cert = certify_trichotomy(Graph(8), path_graph(2), Fraction(1, 4));
        auto cj = certificate_to_json(cert);
        CHECK(cj["kind"] == "anticomplete_pair");
    }
}
