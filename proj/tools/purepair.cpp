#include "purepair/certify.hpp"
#include "purepair/errors.hpp"
#include "purepair/execution.hpp"
#include "purepair/graph_io.hpp"
#include "purepair/harness.hpp"
#include "purepair/patterns.hpp"
#include "purepair/pipeline.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

using namespace purepair;
using nlohmann::json;

namespace
{
    struct Global
    {
        std::uint64_t seed = 0;
        int threads = 0;
        std::string format = "graph6";
        std::string output;
    };

    auto slurp(const std::string & path) -> std::string
    {
        if (path == "-") {
            std::ostringstream s;
            s << std::cin.rdbuf();
            return s.str();
        }
        std::ifstream f(path, std::ios::binary);
        if (! f)
            throw std::runtime_error("cannot read " + path);
        return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
    }

    auto emit(const Global & g, const std::string & text) -> void
    {
        if (g.output.empty() || g.output == "-") {
            std::cout << text;
            return;
        }
        std::ofstream f(g.output, std::ios::binary);
        if (! f)
            throw std::runtime_error("cannot write " + g.output);
        f << text;
    }

    auto load_graph(const Global & g, const std::string & path) -> Graph
    {
        return read_graph(slurp(path), parse_graph_format(g.format));
    }

    auto set_json(const VertexSet & s) -> json { return s.members(); }

    auto parse_fraction(const std::string & s) -> Fraction { return Fraction::parse(s); }
}

int main(int argc, char ** argv)
{
    CLI::App app{"pure pairs, blockades and rainbow trees"};
    app.require_subcommand(1);
    Global global;
    app.add_option("--seed", global.seed, "random seed");
    app.add_option("--threads", global.threads, "worker threads (default: PUREPAIR_THREADS or all cores)");
    app.add_option("--format", global.format, "graph format: graph6 or edgelist")->check(CLI::IsMember({"graph6", "edgelist"}));
    app.add_option("--output", global.output, "output file (default stdout)");

    // gen
    auto * gen = app.add_subcommand("gen", "random graph, optionally F-free");
    int gen_n = 20;
    double gen_p = 0.1;
    std::string gen_pattern, gen_strategy = "reject";
    gen->add_option("-n,--n", gen_n, "vertex count")->required();
    gen->add_option("-p,--p", gen_p, "edge probability");
    gen->add_option("--pattern", gen_pattern, "forest to exclude");
    gen->add_option("--strategy", gen_strategy, "reject or excise")->check(CLI::IsMember({"reject", "excise"}));

    // embed
    auto * embed = app.add_subcommand("embed", "induced copy of a forest");
    std::string graph_path = "-", pattern;
    embed->add_option("graph", graph_path, "graph file, - for stdin");
    embed->add_option("--pattern", pattern, "pattern, e.g. P4, star3, spider, 4:1-2,2-3")->required();

    // anticomplete
    auto * anti = app.add_subcommand("anticomplete", "anticomplete pair of a given size, or the largest");
    int anti_k = 0;
    std::string anti_mode = "exact";
    bool anti_pure = false;
    anti->add_option("graph", graph_path, "graph file, - for stdin");
    anti->add_option("-k,--k", anti_k, "side size; omit for the maximum");
    anti->add_option("--mode", anti_mode, "exact or heuristic")->check(CLI::IsMember({"exact", "heuristic"}));
    anti->add_flag("--pure", anti_pure, "fall back to a complete pair");

    // coherent
    auto * coh = app.add_subcommand("coherent", "epsilon-coherence");
    std::string eps_text = "1/20";
    int exact_bound = 64;
    coh->add_option("graph", graph_path, "graph file, - for stdin");
    coh->add_option("--epsilon", eps_text, "epsilon as p/q or decimal");
    coh->add_option("--exact-bound", exact_bound, "largest n for the exact pair search");

    // certify
    auto * cert = app.add_subcommand("certify", "trichotomy certificate; exit code 0 copy, 1 degree, 2 pair, 3 not found");
    cert->add_option("graph", graph_path, "graph file, - for stdin");
    cert->add_option("--pattern", pattern, "forest")->required();
    cert->add_option("--epsilon", eps_text, "epsilon");
    cert->add_option("--exact-bound", exact_bound, "largest n for the exact pair search");

    // blockade
    auto * blk = app.add_subcommand("blockade", "blockade queries");
    std::string blockade_path, tree_code;
    int blocks = 0, delta = 2, eta = 1, tau = 3;
    std::string kappa_text = "1/2", lambda_text = "1/4", verify_mode = "exhaustive";
    std::uint64_t budget = 10'000'000;
    std::vector<std::string> queries;
    blk->add_option("graph", graph_path, "graph file when partitioning");
    blk->add_option("--blockade", blockade_path, "blockade JSON {graph, blocks}");
    blk->add_option("--blocks", blocks, "partition the graph into this many blocks");
    blk->add_option("--query", queries, "trace cost uniform invariant concave radius descent")
        ->check(CLI::IsMember({"trace", "cost", "uniform", "invariant", "concave", "radius", "descent", "show"}));
    blk->add_option("--tree", tree_code, "ordered tree m:u-v,... for trace");
    blk->add_option("--tau", tau, "tree size bound");
    blk->add_option("--kappa", kappa_text, "contraction ratio");
    blk->add_option("--lambda", lambda_text, "concavity ratio");
    blk->add_option("--delta", delta, "delta for the radius");
    blk->add_option("--mode", verify_mode, "exhaustive or sampled")->check(CLI::IsMember({"exhaustive", "sampled"}));
    blk->add_option("--budget", budget, "search budget");

    // pipeline
    auto * pipe = app.add_subcommand("pipeline", "rainbow tree pipeline; JSON lines per phase");
    std::string pipe_mode = "toy", tree_pattern = "P3";
    int r_group = 2, minor_length = 0;
    std::string invariance_text = "1/4", epsilon_opt;
    bool skip_fallback = false;
    std::uint64_t order_samples = 10'000;
    pipe->add_option("graph", graph_path, "graph file when partitioning");
    pipe->add_option("--blockade", blockade_path, "blockade JSON");
    pipe->add_option("--blocks", blocks, "partition the graph into this many blocks");
    pipe->add_option("--tree", tree_pattern, "tree pattern");
    pipe->add_option("--mode", pipe_mode, "paper or toy")->check(CLI::IsMember({"paper", "toy"}));
    auto * o_delta = pipe->add_option("--delta", delta, "delta");
    auto * o_eta = pipe->add_option("--eta", eta, "eta");
    auto * o_lambda = pipe->add_option("--lambda", lambda_text, "concavity ratio");
    auto * o_kappa = pipe->add_option("--kappa", kappa_text, "contraction ratio");
    auto * o_tau = pipe->add_option("--tau", tau, "tree size bound");
    auto * o_r = pipe->add_option("--r", r_group, "grouping run length");
    auto * o_inv = pipe->add_option("--invariance", invariance_text, "invariance ratio for escalation");
    pipe->add_option("--minor-length", minor_length, "length of the uniform minor");
    pipe->add_option("--epsilon", epsilon_opt, "coherence parameter for escalation claims");
    pipe->add_option("--budget", budget, "concavity sample budget");
    pipe->add_option("--orders", order_samples, "orders sampled in escalation");
    pipe->add_flag("--skip-fallback", skip_fallback, "do not try the direct search first");

    // experiment
    auto * exp = app.add_subcommand("experiment", "run an experiment from a JSON config");
    std::string config_path, prefix = "experiment";
    exp->add_option("config", config_path, "config JSON")->required();
    exp->add_option("--prefix", prefix, "output prefix for .jsonl .csv .aggregate.csv .svg .meta.json");

    CLI11_PARSE(app, argc, argv);

    try {
        int threads = global.threads > 0 ? global.threads : thread_count_from_env();
        set_thread_count(threads);

        if (*gen) {
            Graph g = gen_pattern.empty()
                ? gnp(gen_n, gen_p, global.seed)
                : sample_forest_free(parse_pattern(gen_pattern), gen_n, gen_p, global.seed, parse_sample_strategy(gen_strategy));
            auto text = write_graph(g, parse_graph_format(global.format));
            emit(global, text.ends_with('\n') ? text : text + "\n");
            return 0;
        }
        if (*embed) {
            auto g = load_graph(global, graph_path);
            auto f = parse_pattern(pattern);
            auto e = find_induced_forest(g, f, std::max(default_pattern_budget, f.size()));
            json j{{"pattern", pattern}, {"found", e.has_value()}};
            if (e)
                j["embedding"] = *e;
            emit(global, j.dump() + "\n");
            return e ? 0 : 1;
        }
        if (*anti) {
            auto g = load_graph(global, graph_path);
            json j;
            if (anti_k <= 0) {
                auto v = max_anticomplete_value(g, default_exact_bound, true);
                j = {{"value", v.value}, {"a", set_json(v.a)}, {"b", set_json(v.b)}};
            }
            else if (anti_pure) {
                auto p = pure_pair(g, anti_k);
                j = {{"k", anti_k}, {"found", p.has_value()}};
                if (p) {
                    j["polarity"] = p->polarity == Polarity::complete ? "complete" : "anticomplete";
                    j["a"] = set_json(p->a);
                    j["b"] = set_json(p->b);
                }
            }
            else {
                auto mode = anti_mode == "exact" ? PairMode::exact : PairMode::heuristic;
                auto p = find_anticomplete_pair(g, anti_k, {mode, Execution::parallel, 0, global.seed});
                j = {{"k", anti_k}, {"status", pair_status_name(p.status)}, {"mode", pair_mode_name(mode)}};
                if (p.status == PairStatus::found) {
                    j["a"] = set_json(p.a);
                    j["b"] = set_json(p.b);
                }
            }
            emit(global, j.dump() + "\n");
            return 0;
        }
        if (*coh) {
            auto g = load_graph(global, graph_path);
            auto eps = parse_fraction(eps_text);
            auto v = is_epsilon_coherent(g, eps, {exact_bound, Execution::parallel, global.seed});
            json j{{"epsilon", eps.to_string()}, {"n", g.size()}, {"verdict", verdict_name(v.verdict)}, {"reason", v.reason},
                {"pair_mode", pair_mode_name(v.pair_mode)}};
            if (v.vertex >= 0) {
                j["vertex"] = v.vertex;
                j["degree"] = v.degree;
            }
            if (v.pair) {
                j["a"] = set_json(v.pair->a);
                j["b"] = set_json(v.pair->b);
            }
            emit(global, j.dump() + "\n");
            return v.verdict == Verdict::holds ? 0 : 1;
        }
        if (*cert) {
            auto g = load_graph(global, graph_path);
            auto f = parse_pattern(pattern);
            auto eps = parse_fraction(eps_text);
            auto c = certify_trichotomy(g, f, eps, {std::max(default_pattern_budget, f.size()), exact_bound, Execution::parallel, global.seed});
            auto j = certificate_to_json(c);
            if (c.kind != CertificateKind::not_found) {
                auto problem = verify_certificate(g, f, eps, c);
                if (! problem.empty())
                    throw std::logic_error("certificate failed verification: " + problem);
                j["verified"] = true;
            }
            j["epsilon"] = eps.to_string();
            j["pattern"] = pattern;
            emit(global, j.dump() + "\n");
            return exit_code(c.kind);
        }

        auto load_blockade = [&]() -> Blockade {
            if (! blockade_path.empty())
                return blockade_from_json(json::parse(slurp(blockade_path)));
            if (blocks <= 0)
                throw std::invalid_argument("give --blockade or a graph with --blocks");
            return block_partition(std::make_shared<const Graph>(load_graph(global, graph_path)), blocks);
        };

        if (*blk) {
            auto b = load_blockade();
            auto kappa = parse_fraction(kappa_text);
            VerifyOptions vo{parse_verify_mode(verify_mode), budget, global.seed, Execution::parallel};
            TraceMemo memo;
            json j{{"length", b.length()}, {"width", b.width()}, {"equicardinal", b.is_equicardinal()}};
            if (queries.empty())
                queries.push_back("show");
            for (auto & q : queries) {
                if (q == "show")
                    j["blockade"] = blockade_to_json(b);
                else if (q == "trace") {
                    auto t = trace(b, parse_ordered_tree(tree_code));
                    j["trace"] = {{"tree", t.tree}, {"supports", t.supports}};
                }
                else if (q == "cost")
                    j["tau_cost"] = tau_cost(b, tau, Execution::parallel, &memo);
                else if (q == "uniform") {
                    auto u = is_support_uniform(b, tau, Execution::parallel, &memo);
                    j["uniform"] = {{"uniform", u.uniform}, {"tree", u.tree}, {"present", u.present}, {"absent", u.absent}};
                }
                else if (q == "invariant") {
                    auto v = is_support_invariant(b, kappa, tau, vo, &memo);
                    json w;
                    if (v.witness)
                        w = {{"tree", v.witness->tree}, {"support", v.witness->support}};
                    j["invariant"] = {{"verdict", verdict_name(v.verdict)}, {"checked", v.checked}, {"witness", w}, {"note", v.note}};
                }
                else if (q == "concave") {
                    auto v = is_concave(b, parse_fraction(lambda_text), vo);
                    json w;
                    if (v.witness)
                        w = {{"blocks", {v.witness->h1, v.witness->h2, v.witness->h3}}, {"x", v.witness->x.members()}};
                    j["concave"] = {{"verdict", verdict_name(v.verdict)}, {"checked", v.checked}, {"witness", w}, {"note", v.note}};
                }
                else if (q == "radius") {
                    auto [a, r] = left_right_radius(b, delta);
                    j["radius"] = {{"delta", delta}, {"alpha", a}, {"beta", r}};
                }
                else if (q == "descent") {
                    DescentOptions d;
                    d.search.seed = global.seed;
                    d.verify = vo;
                    auto res = cost_descent(b, kappa, tau, d, &memo);
                    j["descent"] = {{"steps", res.steps.size()},
                        {"cost_before", res.initial_cost},
                        {"cost_after", res.final_cost},
                        {"verdict", verdict_name(res.verdict)},
                        {"blockade", blockade_to_json(res.blockade)}};
                }
            }
            emit(global, j.dump() + "\n");
            return 0;
        }

        if (*pipe) {
            auto b = load_blockade();
            auto tree = parse_pattern(tree_pattern);
            PipelineParams p;
            if (o_delta->count() == 0 && o_eta->count() == 0) {
                auto shape = tree_shape(tree);
                delta = shape.delta;
                eta = shape.eta;
            }
            if (pipe_mode == "paper") {
                p = paper_params(delta, eta, tree.size());
                for (auto * o : {o_lambda, o_kappa, o_tau, o_r, o_inv})
                    if (o->count() > 0)
                        throw std::invalid_argument("paper mode computes " + o->get_name() + "; use --mode toy to override it");
            }
            else {
                p.mode = PipelineMode::toy;
                p.delta = delta;
                p.eta = eta;
                p.lambda = parse_fraction(lambda_text);
                p.kappa = parse_fraction(kappa_text);
                p.tau = tau;
                p.r_group = r_group;
                p.invariance = parse_fraction(invariance_text);
                for (auto * o : {o_lambda, o_kappa, o_tau, o_r, o_inv})
                    if (o->count() > 0)
                        p.overrides.push_back(o->get_name());
            }
            p.minor_length = minor_length;
            if (! epsilon_opt.empty())
                p.epsilon = parse_fraction(epsilon_opt);
            p.concavity.budget = budget;
            p.concavity.seed = global.seed;
            p.descent.search.seed = global.seed;
            p.order_samples = order_samples;
            p.seed = global.seed;
            p.skip_fallback = skip_fallback;
            auto r = rainbow_pipeline(b, tree, p);
            std::string text;
            for (auto & rec : r.log)
                text += rec.dump() + "\n";
            json findings = json::array();
            for (auto & f : r.findings)
                findings.push_back({{"phase", f.phase}, {"claim", f.claim}, {"detail", f.detail}});
            json fin{{"phase", "result"}, {"stopped", r.stopped_phase}, {"outcome", r.outcome}, {"findings", findings}};
            if (r.embedding)
                fin["embedding"] = {{"vertices", r.embedding->vertex}, {"blocks", r.embedding->block_index}};
            text += fin.dump() + "\n";
            emit(global, text);
            return r.embedding ? 0 : 1;
        }

        if (*exp) {
            auto c = parse_experiment_config(json::parse(slurp(config_path)));
            auto t0 = std::chrono::steady_clock::now();
            auto out = run_experiment(c);
            double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            json meta{{"threads", thread_count()}, {"wall_seconds", seconds}, {"command", "experiment"}};
            for (auto & path : write_experiment(prefix, c, out, meta))
                std::cerr << "wrote " << path << "\n";
            return 0;
        }
    }
    catch (const ParseError & e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 64;
    }
    catch (const std::exception & e) {
        std::cerr << "error: " << e.what() << "\n";
        return 70;
    }
    return 0;
}
