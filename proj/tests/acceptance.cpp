// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
// Usage: purepair-acceptance [criterion ...]

#include "oracles.hpp"

#include "purepair/certify.hpp"
#include "purepair/errors.hpp"
#include "purepair/execution.hpp"
#include "purepair/graph_io.hpp"
#include "purepair/harness.hpp"
#include "purepair/patterns.hpp"
#include "purepair/pipeline.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>

using namespace purepair;

namespace
{
    // pinned limits
    constexpr int c1_random_graphs = 2000, c1_max_n = 18, c1_sweep_n = 6, c1_random_small = 2000;
    constexpr int c2_graphs = 500, c2_max_n = 9, c2_max_forest = 5;
    constexpr int c3_blockades = 200, c3_max_n = 14, c3_max_k = 5, c3_contractions = 1000;
    constexpr int c4_blockades = 100, c4_max_width = 6, c4_tau = 3;
    constexpr int c5_instances = 100, c5_tau = 3;
    constexpr int c8_seeds = 100, c8_required = 95, c8_n = 30;
    constexpr int c9_samples_per_n = 40;
    constexpr int c10_blocks = 48, c10_width = 3;
    constexpr std::uint64_t c10_concavity_samples = 10'000;
    const std::vector<int> c9_n{20, 25, 30, 35, 40};
    const std::vector<int> c11_threads{1, 2, 4};

    struct Outcome
    {
        bool pass = true;
        std::string detail;
    };

    struct Criterion
    {
        int id;
        std::string name;
        double limit_seconds;
        std::function<Outcome()> run;
    };

    auto fail(Outcome & o, const std::string & why) -> void
    {
        if (o.pass)
            o.detail = why;
        o.pass = false;
    }

    auto ordered_up_to(int tau) -> std::vector<OrderedTree> { return oracle::all_ordered_trees_up_to(tau); }

    // ---- 1 ----------------------------------------------------------------

    auto check_pair_graph(const Graph & g, Outcome & o, int & disagreements) -> void
    {
        int best = oracle::max_anticomplete(g);
        auto v = max_anticomplete_value(g, 24, false, Execution::parallel);
        bool ok = v.value == best && (best == 0 || oracle::is_anticomplete_pair(g, v.a, v.b, best));
        if (ok && 2 * (best + 1) <= g.size())
            ok = find_anticomplete_pair(g, best + 1).status == PairStatus::none;
        if (ok && best > 0) {
            auto p = find_anticomplete_pair(g, best, {PairMode::exact, Execution::serial});
            ok = p.status == PairStatus::found && oracle::is_anticomplete_pair(g, p.a, p.b, best);
        }
        if (! ok) {
            ++disagreements;
            fail(o, "disagreement on " + to_graph6(g) + ": oracle " + std::to_string(best) + ", library " + std::to_string(v.value));
        }
    }

    auto criterion_1() -> Outcome
    {
        Outcome o;
        int disagreements = 0, graphs = 0;
        Rng rng(1);
        for (int i = 0; i < c1_random_graphs; ++i, ++graphs) {
            int n = 2 + static_cast<int>(rng.below(c1_max_n - 1));
            double p = 0.05 + 0.6 * rng.uniform01();
            check_pair_graph(gnp(n, p, derive_seed(1, static_cast<std::uint64_t>(i))), o, disagreements);
        }
        for (int n = 1; n <= c1_sweep_n; ++n)
            for (std::uint32_t mask = 0; mask < (1u << (n * (n - 1) / 2)); ++mask, ++graphs)
                check_pair_graph(oracle::edge_mask_graph(n, mask), o, disagreements);
        for (int i = 0; i < c1_random_small; ++i, ++graphs) {
            int n = 7 + i % 2;
            check_pair_graph(gnp(n, 0.15 + 0.7 * rng.uniform01(), derive_seed(2, static_cast<std::uint64_t>(i))), o, disagreements);
        }
        if (o.pass)
            o.detail = std::to_string(graphs) + " graphs, 0 disagreements";
        return o;
    }

    // ---- 2 ----------------------------------------------------------------

    auto criterion_2() -> Outcome
    {
        Outcome o;
        std::vector<Graph> forests;
        for (int m = 1; m <= c2_max_forest; ++m)
            for (auto & f : oracle::forests(m))
                forests.push_back(f);
        Rng rng(2);
        int disagreements = 0, found = 0;
        for (int i = 0; i < c2_graphs; ++i) {
            int n = 1 + static_cast<int>(rng.below(c2_max_n));
            auto g = gnp(n, 0.1 + 0.8 * rng.uniform01(), derive_seed(3, static_cast<std::uint64_t>(i)));
            for (auto & f : forests) {
                auto lib = find_induced_forest(g, f);
                bool truth = oracle::induced_copy(g, f);
                bool ok = lib.has_value() == truth && (! lib || oracle::is_induced_copy(g, f, *lib));
                found += truth;
                if (! ok) {
                    ++disagreements;
                    fail(o, "disagreement on " + to_graph6(g) + " with forest " + to_edge_list(f));
                }
            }
        }
        if (o.pass)
            o.detail = std::to_string(forests.size()) + " forests x " + std::to_string(c2_graphs) + " graphs (" + std::to_string(found)
                + " copies), 0 disagreements";
        return o;
    }

    // ---- 3 ----------------------------------------------------------------

    auto c3_blockade(std::uint64_t i) -> Blockade
    {
        int k = 2 + static_cast<int>(i % (c3_max_k - 1));
        int max_w = (c3_max_n - 2) / k;
        return oracle::random_ragged_blockade(k, max_w, 0.2 + 0.05 * static_cast<double>(i % 10), derive_seed(4, i));
    }

    auto criterion_3() -> Outcome
    {
        Outcome o;
        auto trees = ordered_up_to(3);
        std::uint64_t supports = 0;
        for (int i = 0; i < c3_blockades; ++i) {
            auto b = c3_blockade(static_cast<std::uint64_t>(i));
            for (auto & j : trees) {
                auto want = oracle::trace(b, j);
                auto got = trace(b, j);
                if (got.supports != want)
                    fail(o, "trace mismatch for " + j.code() + " on blockade " + std::to_string(i));
                supports += want.size();
                if (j.size() > b.length())
                    continue;
                for (auto & pos : oracle::subsets(b.length(), j.size())) {
                    Support s;
                    for (auto p : pos)
                        s.push_back(b.index(p));
                    auto e = find_rainbow_copy(b, j, s);
                    bool in = std::find(want.begin(), want.end(), s) != want.end();
                    RainbowCheck ordered;
                    ordered.ordered = true;
                    if (e.has_value() != in || (e && (e->support() != s || ! verify_rainbow(b, j.to_graph(), *e, ordered).empty())))
                        fail(o, "fixed-support search disagrees for " + j.code() + " on blockade " + std::to_string(i));
                }
            }
        }
        int violations = 0;
        for (int i = 0; i < c3_contractions; ++i) {
            auto b = c3_blockade(static_cast<std::uint64_t>(i % c3_blockades));
            Rng rng(derive_seed(5, static_cast<std::uint64_t>(i)));
            std::map<int, VertexSet> shrink;
            for (int p = 0; p < b.length(); ++p) {
                VertexSet keep(b.host().size());
                for (int v : b.block(p).members())
                    if (rng.bernoulli(0.5))
                        keep.set(v);
                if (keep.empty())
                    keep.set(b.block(p).members()[rng.below(static_cast<std::uint64_t>(b.block(p).count()))]);
                shrink[b.index(p)] = keep;
            }
            auto c = contraction(b, shrink);
            for (auto & j : trees) {
                auto big = trace(b, j);
                for (auto & s : trace(c, j).supports)
                    if (! big.contains(s)) {
                        ++violations;
                        fail(o, "contraction " + std::to_string(i) + " grew the trace of " + j.code());
                    }
            }
        }
        if (o.pass)
            o.detail = std::to_string(c3_blockades) + " blockades (" + std::to_string(supports) + " supports), " + std::to_string(c3_contractions)
                + " contractions, 0 violations";
        return o;
    }

    // ---- 4 ----------------------------------------------------------------

    // number of contractions the brute-force invariance oracle would enumerate
    auto oracle_cases(const Blockade & b, const Fraction & kappa) -> double
    {
        int w = b.width();
        auto c = std::max<std::int64_t>(1, kappa.ceil_times(w));
        double total = 1;
        for (int p = 0; p < b.length(); ++p) {
            int sz = b.block(p).count();
            double options = 0;
            for (std::uint32_t mask = 1; mask < (1u << sz); ++mask)
                options += std::popcount(mask) >= c;
            total *= options;
        }
        return total;
    }

    auto criterion_4() -> Outcome
    {
        Outcome o;
        auto kappa = Fraction(1, 2);
        int total_steps = 0, oracle_checked = 0;
        std::map<int, int> widths;
        for (int i = 0; i < c4_blockades; ++i) {
            Rng rng(derive_seed(6, static_cast<std::uint64_t>(i)));
            int k = 3 + static_cast<int>(rng.below(3));
            int w = 2 + static_cast<int>(rng.below(c4_max_width - 1));
            auto b = oracle::random_blockade(k, w, 0.02 + 0.2 * rng.uniform01(), derive_seed(7, static_cast<std::uint64_t>(i)));
            DescentOptions opts;
            opts.search.exhaustive_limit = ~std::uint64_t{0};
            auto d = cost_descent(b, kappa, c4_tau, opts);
            auto tag = "blockade " + std::to_string(i) + ": ";
            if (d.verdict != Verdict::holds)
                fail(o, tag + "descent ended " + verdict_name(d.verdict));
            if (! is_contraction_of(d.blockade, b) || ! d.blockade.is_equicardinal())
                fail(o, tag + "output is not an equicardinal contraction");
            VerifyOptions exhaustive;
            auto inv = is_support_invariant(d.blockade, kappa, c4_tau, exhaustive);
            if (inv.verdict != Verdict::holds)
                fail(o, tag + "output not support-invariant");
            if (oracle_cases(d.blockade, kappa) <= 5000) {
                ++oracle_checked;
                if (! oracle::invariant(d.blockade, kappa, c4_tau))
                    fail(o, tag + "brute-force oracle refutes invariance");
            }
            std::uint64_t prev = d.initial_cost;
            if (tau_cost(b, c4_tau) != d.initial_cost)
                fail(o, tag + "initial cost mismatch");
            for (auto & st : d.steps) {
                if (st.cost_before != prev || st.cost_after >= st.cost_before)
                    fail(o, tag + "cost did not strictly decrease");
                prev = st.cost_after;
            }
            if (tau_cost(d.blockade, c4_tau) != d.final_cost || prev != d.final_cost)
                fail(o, tag + "final cost mismatch");
            // width >= (1/2)^steps * W, exactly
            auto steps = static_cast<int>(d.steps.size());
            if ((static_cast<std::int64_t>(d.blockade.width()) << steps) < b.width())
                fail(o, tag + "width below kappa^steps * W");
            if (static_cast<std::uint64_t>(steps) > d.initial_cost)
                fail(o, tag + "more steps than the initial cost");
            total_steps += steps;
            ++widths[d.blockade.width()];
        }
        if (o.pass)
            o.detail = std::to_string(c4_blockades) + " descents, " + std::to_string(total_steps) + " steps, " + std::to_string(oracle_checked)
                + " outputs also checked by brute force; final widths";
        for (auto & [w, count] : widths)
            o.detail += " " + std::to_string(w) + ":" + std::to_string(count);
        return o;
    }

    // ---- 5 ----------------------------------------------------------------

    auto two_regime(int k, int w) -> Blockade
    {
        int n = k * w;
        auto g = std::make_shared<Graph>(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (u / w != v / w && u / w < k / 2 && v / w < k / 2)
                    g->add_edge(u, v);
        return block_partition(g, k);
    }

    auto criterion_5() -> Outcome
    {
        Outcome o;
        int succeeded = 0, short_ = 0;
        for (int i = 0; i < c5_instances; ++i) {
            Rng rng(derive_seed(8, static_cast<std::uint64_t>(i)));
            int k = 6 + static_cast<int>(rng.below(7));
            auto b = oracle::random_blockade(k, 2, 0.05 + 0.6 * rng.uniform01(), derive_seed(9, static_cast<std::uint64_t>(i)));
            int want = 2 + static_cast<int>(rng.below(3));
            try {
                auto x = extract_support_uniform(b, want, c5_tau);
                ++succeeded;
                if (x.blockade.length() != want)
                    fail(o, "instance " + std::to_string(i) + ": wrong length");
                if (! is_support_uniform(x.blockade, c5_tau).uniform || ! oracle::uniform(x.blockade, c5_tau))
                    fail(o, "instance " + std::to_string(i) + ": output not support-uniform");
                std::vector<int> idx = x.blockade.indices();
                if (! (sub_blockade(b, idx) == x.blockade))
                    fail(o, "instance " + std::to_string(i) + ": output is not a sub-blockade");
            }
            catch (const InsufficientLength &) {
                ++short_;
            }
        }
        auto hand = two_regime(12, 2);
        auto x = extract_support_uniform(hand, 2, c5_tau);
        if (x.blockade.length() < 2 || ! oracle::uniform(x.blockade, c5_tau))
            fail(o, "two-regime instance: no uniform sub-blockade of length 2");
        auto longest = extract_support_uniform(hand, 1, c5_tau).rounds.back().second;
        if (o.pass)
            o.detail = std::to_string(succeeded) + " extractions verified (" + std::to_string(short_) + " too short), two-regime keeps "
                + std::to_string(longest) + " of 12";
        return o;
    }

    // ---- 6 ----------------------------------------------------------------

    auto criterion_6() -> Outcome
    {
        Outcome o;
        int checks = 0;
        for (int d = 2; d <= 4; ++d)
            for (int e = 0; e <= 4; ++e, ++checks) {
                std::int64_t pw = 1;
                for (int i = 0; i <= e; ++i)
                    pw *= d;
                if (build_t(d, e).size() != (pw - 1) / (d - 1))
                    fail(o, "|T(" + std::to_string(d) + "," + std::to_string(e) + ")| wrong");
            }
        if (build_t(2, 3).size() != 15)
            fail(o, "|T(2,3)| != 15");
        for (int d = 2; d <= 3; ++d)
            for (int a = 0; a <= 2; ++a) {
                ++checks;
                if (build_q(d, d, a).canonical_code() != build_t(d, a + 1).canonical_code())
                    fail(o, "Q(delta) differs from T(delta, alpha+1)");
                if (! rooted_contains(build_s(d, d, a), build_t(d, a + 1)))
                    fail(o, "S(delta) does not contain T(delta, alpha+1)");
                for (int b = a; b <= 2; ++b) {
                    ++checks;
                    if (build_r(2 * d, d, a, b).canonical_code() != build_t(d, b + 1).canonical_code())
                        fail(o, "R(2delta) differs from T(delta, beta+1)");
                    for (int g = 0; g <= d; ++g, ++checks)
                        if (build_r(g, d, a, b).canonical_code() != build_q(g, d, a).canonical_code())
                            fail(o, "R(gamma) differs from Q(gamma)");
                }
            }
        if (o.pass)
            o.detail = std::to_string(checks) + " identities";
        return o;
    }

    // ---- 7 ----------------------------------------------------------------

    auto criterion_7() -> Outcome
    {
        Outcome o;
        const std::vector<std::size_t> want{1, 1, 3, 16, 125, 1296};
        std::string counts;
        for (int m = 1; m <= 6; ++m) {
            auto all = enumerate_ordered_trees(m);
            counts += (m > 1 ? "," : "") + std::to_string(all.size());
            std::size_t cayley = 1;
            for (int i = 0; i < m - 2; ++i)
                cayley *= static_cast<std::size_t>(m);
            if (all.size() != want[static_cast<std::size_t>(m - 1)] || all.size() != cayley)
                fail(o, "m=" + std::to_string(m) + ": " + std::to_string(all.size()) + " trees");
            std::set<std::string> codes, expected;
            for (auto & t : all)
                codes.insert(t.code());
            if (codes.size() != all.size())
                fail(o, "duplicate codes at m=" + std::to_string(m));
            for (auto & e : oracle::ordered_trees(m))
                expected.insert(OrderedTree(m, e).code());
            if (codes != expected)
                fail(o, "m=" + std::to_string(m) + " differs from the edge-subset enumeration");
        }
        if (o.pass)
            o.detail = "counts " + counts;
        return o;
    }

    // ---- 8 ----------------------------------------------------------------

    auto criterion_8() -> Outcome
    {
        Outcome o;
        const std::vector<Fraction> grid{Fraction(1, 2), Fraction(1, 3), Fraction(1, 4), Fraction(1, 5), Fraction(1, 8), Fraction(1, 10)};
        int coherent = 0, judged = 0;
        auto judge = [&](const Graph & g) {
            for (auto & eps : grid) {
                ++judged;
                auto v = is_epsilon_coherent(g, eps);
                int n = g.size();
                auto k = eps.ceil_times(n) < 1 ? 1 : eps.ceil_times(n);
                bool truth = n > 1 && ! eps.le_ratio(max_degree(g).degree, n) && oracle::max_anticomplete(g) < k;
                if ((v.verdict == Verdict::holds) != truth)
                    fail(o, "coherence disagrees with the oracle on " + to_graph6(g) + " at " + eps.to_string());
                if (v.verdict == Verdict::holds) {
                    ++coherent;
                    // n > 1/eps
                    if (! (Fraction(1, 1) < eps * Fraction(n, 1)))
                        fail(o, "coherent graph with n <= 1/eps: " + to_graph6(g));
                }
            }
        };
        for (int n = 1; n <= 5; ++n)
            for (std::uint32_t mask = 0; mask < (1u << (n * (n - 1) / 2)); ++mask)
                judge(oracle::edge_mask_graph(n, mask));
        for (std::uint64_t s = 0; s < 300; ++s)
            judge(gnp(6 + static_cast<int>(s % 12), 0.5 + 0.4 * static_cast<double>(s % 5) / 5, derive_seed(10, s)));

        int refuted = 0;
        auto eps = Fraction(1, 10);
        for (int s = 0; s < c8_seeds; ++s) {
            auto g = gnp(c8_n, 3.0 / c8_n, derive_seed(11, static_cast<std::uint64_t>(s)));
            auto v = is_epsilon_coherent(g, eps);
            if (v.verdict != Verdict::refuted)
                continue;
            int k = 3;
            bool witness = false;
            if (v.reason == "degree")
                witness = v.vertex >= 0 && g.degree(v.vertex) >= k && v.degree == g.degree(v.vertex);
            else if (v.reason == "pair" && v.pair)
                witness = oracle::is_anticomplete_pair(g, v.pair->a.lowest(k), v.pair->b.lowest(k), k);
            refuted += witness;
        }
        if (refuted < c8_required)
            fail(o, "only " + std::to_string(refuted) + " of " + std::to_string(c8_seeds) + " refuted with a witness");
        if (o.pass)
            o.detail = std::to_string(judged) + " judgements (" + std::to_string(coherent) + " coherent), G(30,3/30) refuted with witness in "
                + std::to_string(refuted) + "/" + std::to_string(c8_seeds);
        return o;
    }

    // ---- 9 ----------------------------------------------------------------

    const std::vector<std::string> c9_patterns{"P4", "P5", "star3", "spider"};

    auto c9_config(const std::string & pattern) -> ExperimentConfig
    {
        ExperimentConfig c;
        c.pattern = pattern;
        c.n_values = c9_n;
        c.degree = 1.5;
        c.strategy = SampleStrategy::excise;
        c.samples = c9_samples_per_n;
        c.epsilons = {Fraction(1, 20)};
        c.seed = 2024;
        return c;
    }

    // all k-subsets A, partner V - A - N(A); for small k only
    auto oracle_pair_exists(const Graph & g, int k) -> bool
    {
        int n = g.size();
        std::vector<int> a;
        auto rec = [&](auto & self, int from) -> bool {
            if (static_cast<int>(a.size()) == k) {
                int partner = 0;
                for (int v = 0; v < n; ++v) {
                    bool out = true;
                    for (int u : a)
                        out = out && u != v && ! g.adjacent(u, v);
                    partner += out;
                }
                return partner >= k;
            }
            for (int v = from; v < n; ++v) {
                a.push_back(v);
                if (self(self, v + 1))
                    return true;
                a.pop_back();
            }
            return false;
        };
        return rec(rec, 0);
    }

    struct C9Run
    {
        std::string bytes;
        Outcome outcome;
        int samples = 0;
    };

    auto run_c9(Execution exec, bool verify) -> C9Run
    {
        C9Run run;
        auto & o = run.outcome;
        std::map<std::string, int> kinds;
        int certified = 0;
        auto & total = run.samples;
        for (auto & name : c9_patterns) {
            auto c = c9_config(name);
            auto out = epsilon_profile(c, exec);
            for (auto & r : out.records)
                run.bytes += r.dump() + "\n";
            run.bytes += out.samples.to_string() + out.aggregates.to_string();
            if (! verify)
                continue;
            auto f = parse_pattern(name);
            for (auto & r : out.records) {
                if (r["kind"] != "sample")
                    continue;
                ++total;
                auto g = from_graph6(r["graph6"].get<std::string>());
                auto tag = name + " n=" + std::to_string(r["n"].get<int>()) + " sample " + std::to_string(r["sample"].get<int>()) + ": ";
                if (oracle::induced_copy(g, f))
                    fail(o, tag + "sample is not " + name + "-free");
                if (g.size() < 2) {
                    fail(o, tag + "sample has fewer than two vertices");
                    continue;
                }
                auto eps = Fraction(1, 20);
                int k = (g.size() + 19) / 20;
                auto cert = certify_trichotomy(g, f, eps);
                if (r["certificates"][0]["kind"] != certificate_kind_name(cert.kind))
                    fail(o, tag + "recorded certificate differs from a rerun");
                ++kinds[certificate_kind_name(cert.kind)];
                bool ok = false;
                switch (cert.kind) {
                case CertificateKind::high_degree:
                    ok = cert.vertex >= 0 && g.degree(cert.vertex) >= k;
                    break;
                case CertificateKind::induced_copy:
                    ok = oracle::is_induced_copy(g, f, cert.embedding);
                    break;
                case CertificateKind::anticomplete_pair:
                    ok = oracle::is_anticomplete_pair(g, cert.a.lowest(k), cert.b.lowest(k), k);
                    break;
                case CertificateKind::not_found: {
                    bool low = true;
                    for (int v = 0; v < g.size(); ++v)
                        low = low && g.degree(v) < k;
                    bool confirmed = low && ! oracle::induced_copy(g, f) && (k > 3 || ! oracle_pair_exists(g, k));
                    fail(o, tag + (confirmed ? "no certificate (confirmed by oracles: extremal example)" : "no certificate, but an oracle finds one"));
                    continue;
                }
                }
                if (! ok)
                    fail(o, tag + "certificate rejected by the oracle check");
                certified += ok;
            }
        }
        if (verify && o.pass) {
            o.detail = std::to_string(certified) + "/" + std::to_string(total) + " verified certificates (";
            bool first = true;
            for (auto & [k, v] : kinds) {
                o.detail += (first ? "" : ", ") + k + " " + std::to_string(v);
                first = false;
            }
            o.detail += ")";
        }
        return run;
    }

    auto criterion_9() -> Outcome
    {
        auto run = run_c9(Execution::parallel, true);
        auto expected = static_cast<int>(c9_patterns.size() * c9_n.size()) * c9_samples_per_n;
        if (run.samples != expected)
            fail(run.outcome, "expected " + std::to_string(expected) + " samples, saw " + std::to_string(run.samples));
        return run.outcome;
    }

    // ---- 10 ---------------------------------------------------------------

    auto c10_instance() -> Blockade
    {
        // complete multipartite: every rainbow triple is a triangle, so no rainbow P3 exists
        int n = c10_blocks * c10_width;
        auto g = std::make_shared<Graph>(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (u / c10_width != v / c10_width)
                    g->add_edge(u, v);
        return block_partition(g, c10_blocks);
    }

    auto c10_crossing() -> Blockade
    {
        // vertex (i, x) ~ (j, y) iff i != j and x != y; any two 2-subsets of labels meet,
        // so edges, non-edges and rainbow P3s survive every halving of the blocks
        int n = c10_blocks * c10_width;
        auto g = std::make_shared<Graph>(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (u / c10_width != v / c10_width && u % c10_width != v % c10_width)
                    g->add_edge(u, v);
        return block_partition(g, c10_blocks);
    }

    auto c10_params() -> PipelineParams
    {
        PipelineParams p;
        p.mode = PipelineMode::toy;
        p.skip_fallback = true;
        p.descent.verify.mode = VerifyMode::exhaustive;
        p.concavity = {VerifyMode::sampled, c10_concavity_samples, 0, Execution::parallel};
        p.seed = 10;
        return p;
    }

    auto pipeline_bytes(const PipelineResult & r) -> std::string
    {
        std::string s;
        for (auto & j : r.log)
            s += j.dump() + "\n";
        for (auto & f : r.findings)
            s += f.phase + "|" + f.claim + "|" + f.detail + "\n";
        return s + r.stopped_phase + "|" + r.outcome + "\n";
    }

    auto rainbow_ok(const Blockade & b, const Graph & tree, const RainbowEmbedding & e) -> bool
    {
        if (! oracle::is_induced_copy(b.host(), tree, e.vertex))
            return false;
        std::set<int> used;
        for (std::size_t i = 0; i < e.vertex.size(); ++i) {
            int p = b.position_of_vertex(e.vertex[i]);
            if (p < 0 || b.index(p) != e.block_index[i] || ! used.insert(p).second)
                return false;
        }
        return true;
    }

    auto check_c10(const Blockade & b, const Graph & tree, const PipelineResult & r, Outcome & o, const std::string & tag) -> void
    {
        std::vector<std::string> phases;
        for (auto & j : r.log)
            phases.push_back(j["phase"]);
        if (phases != std::vector<std::string>{"setup", "minor", "concave", "escalation"}) {
            fail(o, tag + "phases ran: " + std::to_string(phases.size()) + ", stopped in " + r.stopped_phase);
            return;
        }
        auto & minor = r.log[1];
        auto & concave = r.log[2];
        auto & esc = r.log[3];
        if (minor["uniform"] != true)
            fail(o, tag + "minor not support-uniform");
        if (minor["invariant"] != "holds")
            fail(o, tag + "minor invariance " + minor["invariant"].get<std::string>());
        if (minor["descent_steps"] == 0) {
            // rebuild the minor and check uniformity by brute force
            auto idx = minor["indices"].get<std::vector<int>>();
            auto m = sub_blockade(b, idx);
            if (! oracle::uniform(m, 3))
                fail(o, tag + "oracle refutes uniformity of the minor");
        }
        if (concave["concavity"] == "refuted" || concave["concavity_mode"] != "sampled"
            || concave["concavity_checked"].get<std::uint64_t>() < c10_concavity_samples)
            fail(o, tag + "concavity not sampled-unrefuted at the required sample count");
        if (esc["max_gamma0"].get<int>() > esc["gamma0_bound"].get<int>())
            fail(o, tag + "gamma0 above 3delta-2");
        for (auto & rd : esc["rounds"])
            if (rd["gamma1"].get<int>() + rd["gamma2"].get<int>() > esc["gamma0_bound"].get<int>())
                fail(o, tag + "gamma0 above 3delta-2 in a round");
        for (auto & j : r.log)
            if (j.contains("embedding"))
                if (! r.embedding || ! rainbow_ok(b, tree, *r.embedding))
                    fail(o, tag + "emitted embedding fails the independent check");
        if (r.embedding && ! rainbow_ok(b, tree, *r.embedding))
            fail(o, tag + "embedding fails the independent check");
    }

    auto criterion_10() -> Outcome
    {
        Outcome o;
        auto b = c10_instance();
        auto tree = parse_pattern("P3");
        auto r = rainbow_pipeline(b, tree, c10_params());
        check_c10(b, tree, r, o, "multipartite: ");
        // no rainbow P3 at all, so the run must end without an embedding
        bool any = false;
        for (auto & j : oracle::ordered_trees(3))
            any = any || ! oracle::trace(b, OrderedTree(3, j)).empty();
        if (any || r.embedding)
            fail(o, "multipartite: rainbow P3 status inconsistent");

        // a host with robust rainbow P3s, where the run has to emit one
        auto cross = c10_crossing();
        auto rs = rainbow_pipeline(cross, tree, c10_params());
        if (rs.log.size() < 2 || rs.log[1]["uniform"] != true || rs.log[1]["invariant"] != "holds")
            fail(o, "crossing host: minor not uniform and invariant");
        if (! rs.embedding || ! rainbow_ok(cross, tree, *rs.embedding))
            fail(o, "crossing host: no verified embedding (stopped in " + rs.stopped_phase + ": " + rs.outcome + ")");

        if (o.pass) {
            auto & esc = r.log[3];
            o.detail = "48x3 multipartite: uniform, invariant (" + std::to_string(r.log[1]["invariance_checked"].get<std::uint64_t>())
                + " cuts), concavity " + r.log[2]["concavity"].get<std::string>() + " after "
                + std::to_string(r.log[2]["concavity_checked"].get<std::uint64_t>()) + " samples, max gamma0 "
                + std::to_string(esc["max_gamma0"].get<int>()) + " <= " + std::to_string(esc["gamma0_bound"].get<int>()) + ", ended: " + r.outcome
                + ", " + std::to_string(r.findings.size()) + " findings; crossing host: " + rs.outcome + " (verified)";
        }
        return o;
    }

    // ---- 11 ---------------------------------------------------------------

    auto criterion_11() -> Outcome
    {
        Outcome o;
        auto b = c10_instance();
        auto cross = c10_crossing();
        auto tree = parse_pattern("P3");
        std::string c9_ref, c10_ref;
        int runs = 0;
        auto compare = [&](const std::string & what, const std::string & ref, const std::string & got) {
            ++runs;
            if (ref != got)
                fail(o, what + " output differs");
        };
        int before = thread_count();
        for (int t : c11_threads) {
            set_thread_count(t);
            auto c9 = run_c9(Execution::parallel, false).bytes;
            auto c10 = pipeline_bytes(rainbow_pipeline(b, tree, c10_params()))
                + pipeline_bytes(rainbow_pipeline(cross, tree, c10_params()));
            if (c9_ref.empty()) {
                c9_ref = c9;
                c10_ref = c10;
            }
            compare("criterion 9 at " + std::to_string(t) + " threads", c9_ref, c9);
            compare("criterion 10 at " + std::to_string(t) + " threads", c10_ref, c10);
        }
        set_thread_count(before);
        auto serial = c10_params();
        serial.descent.search.execution = Execution::serial;
        serial.descent.verify.execution = Execution::serial;
        serial.extract.execution = Execution::serial;
        serial.concavity.execution = Execution::serial;
        compare("criterion 9 serial", c9_ref, run_c9(Execution::serial, false).bytes);
        compare("criterion 10 serial", c10_ref, pipeline_bytes(rainbow_pipeline(b, tree, serial))
                + pipeline_bytes(rainbow_pipeline(cross, tree, serial)));
        compare("criterion 9 repeat", c9_ref, run_c9(Execution::parallel, false).bytes);
        if (o.pass)
            o.detail = std::to_string(runs) + " runs byte-identical (threads 1,2,4, serial, repeat; " + std::to_string(c9_ref.size() + c10_ref.size())
                + " bytes each)";
        return o;
    }
}

int main(int argc, char ** argv)
{
    std::vector<Criterion> all{
        {1, "oracle equivalence: anticomplete pairs", 300, criterion_1},
        {2, "oracle equivalence: induced forests", 300, criterion_2},
        {3, "trace correctness and monotonicity", 300, criterion_3},
        {4, "cost descent contract", 600, criterion_4},
        {5, "support-uniform extraction contract", 120, criterion_5},
        {6, "tree identities", 60, criterion_6},
        {7, "ordered tree enumeration", 60, criterion_7},
        {8, "coherence sanity", 120, criterion_8},
        {9, "trichotomy certificates", 900, criterion_9},
        {10, "pipeline integration (toy mode)", 1200, criterion_10},
        {11, "determinism across thread counts", 1800, criterion_11},
    };
    std::set<int> only;
    for (int i = 1; i < argc; ++i)
        only.insert(std::atoi(argv[i]));

    int failed = 0;
    for (auto & c : all) {
        if (! only.empty() && ! only.count(c.id))
            continue;
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        }
        catch (const std::exception & e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (o.pass && secs > c.limit_seconds)
            fail(o, "took longer than " + std::to_string(static_cast<int>(c.limit_seconds)) + " s");
        failed += ! o.pass;
        std::printf("%s  %2d  %s: %s [%.1f s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    return failed ? 1 : 0;
}
