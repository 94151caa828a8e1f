// Serial reference vs OpenMP kernels on fixed instances; results must agree.

#include "purepair/certify.hpp"
#include "purepair/concavity.hpp"
#include "purepair/execution.hpp"
#include "purepair/harness.hpp"
#include "purepair/patterns.hpp"
#include "purepair/pipeline.hpp"
#include "purepair/trace.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

using namespace purepair;

namespace
{
    auto seconds(const std::function<std::string()> & f, std::string & result) -> double
    {
        auto t0 = std::chrono::steady_clock::now();
        result = f();
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }

    auto random_blockade(int k, int w, double p, std::uint64_t seed) -> Blockade
    {
        auto g = std::make_shared<const Graph>(gnp(k * w, p, seed));
        return block_partition(g, k);
    }

    auto multipartite(int k, int w) -> Blockade
    {
        auto g = std::make_shared<Graph>(k * w);
        for (int u = 0; u < k * w; ++u)
            for (int v = u + 1; v < k * w; ++v)
                if (u / w != v / w)
                    g->add_edge(u, v);
        return block_partition(g, k);
    }
}

int main(int argc, char ** argv)
{
    CLI::App app{"serial vs parallel kernels"};
    int threads = 0, repeat = 1;
    app.add_option("--threads", threads, "threads for the parallel runs");
    app.add_option("--repeat", repeat, "repetitions per kernel (best time kept)");
    CLI11_PARSE(app, argc, argv);
    if (threads > 0)
        set_thread_count(threads);
    else if (thread_count_from_env() > 0)
        set_thread_count(thread_count_from_env());

    struct Kernel
    {
        std::string name;
        std::function<std::string(Execution)> run;
    };

    auto trace_b = random_blockade(12, 5, 0.3, 11);
    auto inv_b = multipartite(20, 6);
    auto con_b = multipartite(24, 6);
    auto leaf_b = multipartite(36, 3);
    auto pair_g = gnp(40, 0.2, 9);
    ExperimentConfig profile;
    profile.pattern = "P4";
    profile.n_values = {30, 33, 36, 40};
    profile.degree = 1.5;
    profile.strategy = SampleStrategy::excise;
    profile.samples = 50;
    profile.seed = 1;

    std::vector<Kernel> kernels{
        {"trace (all trees, tau=5)",
            [&](Execution e) {
                std::string s;
                for (auto & j : ordered_trees_up_to(5))
                    s += std::to_string(trace(trace_b, j, e).count()) + ",";
                return s;
            }},
        {"invariance (exhaustive, kappa=1/2, tau=3)",
            [&](Execution e) {
                TraceMemo memo;
                auto v = is_support_invariant(inv_b, Fraction(1, 2), 3, {VerifyMode::exhaustive, 100'000'000, 0, e}, &memo);
                return std::string(verdict_name(v.verdict)) + ":" + std::to_string(v.checked);
            }},
        {"concavity (sampled 2e5, lambda=1/4)",
            [&](Execution e) {
                auto v = is_concave(con_b, Fraction(1, 4), {VerifyMode::sampled, 200'000, 0, e});
                return std::string(verdict_name(v.verdict)) + ":" + std::to_string(v.checked);
            }},
        {"leaf extension (36 blocks, no copy)",
            [&](Execution e) {
                auto ext = find_leaf_extension(leaf_b, {parse_ordered_tree("2:1-2"), 0}, Fraction(1, 2), {}, e);
                return std::string(ext ? "found" : "none");
            }},
        {"anticomplete pair (n=40, largest k)",
            [&](Execution e) {
                int k = 1;
                while (find_anticomplete_pair(pair_g, k, {PairMode::exact, e, 0, 0}).status == PairStatus::found)
                    ++k;
                return std::to_string(k - 1);
            }},
        {"epsilon profile (200 samples)",
            [&](Execution e) {
                auto out = epsilon_profile(profile, e);
                std::string s;
                for (auto & r : out.records)
                    s += r.dump();
                return std::to_string(std::hash<std::string>{}(s));
            }},
    };

    std::printf("threads: %d\n", thread_count());
    std::printf("%-42s %12s %12s %8s %s\n", "kernel", "serial s", "parallel s", "speedup", "agree");
    int failures = 0;
    for (auto & k : kernels) {
        double best_s = 1e300, best_p = 1e300;
        std::string rs, rp;
        for (int i = 0; i < std::max(1, repeat); ++i) {
            best_s = std::min(best_s, seconds([&] { return k.run(Execution::serial); }, rs));
            best_p = std::min(best_p, seconds([&] { return k.run(Execution::parallel); }, rp));
        }
        bool agree = rs == rp;
        failures += ! agree;
        std::printf("%-42s %12.4f %12.4f %8.2f %s\n", k.name.c_str(), best_s, best_p, best_s / best_p, agree ? "yes" : "NO");
    }
    return failures == 0 ? 0 : 1;
}
