#include "purepair/trace.hpp"
#include "purepair/errors.hpp"
#include "purepair/rainbow.hpp"
#include "purepair/rng.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <sstream>

namespace purepair
{
    auto Trace::contains(const Support & s) const -> bool
    {
        return std::binary_search(supports.begin(), supports.end(), s);
    }

    auto trace(const Blockade & b, const OrderedTree & j, Execution exec) -> Trace
    {
        Trace out{j.code(), j.size(), {}};
        if (j.size() > b.length())
            return out;
        auto indices = b.indices();
        auto candidates = combinations(indices, j.size());
        std::vector<char> hit(candidates.size(), 0);
        auto count = static_cast<long>(candidates.size());

#pragma omp parallel for schedule(dynamic, 16) if (exec == Execution::parallel)
        for (long c = 0; c < count; ++c)
            hit[static_cast<std::size_t>(c)] = find_rainbow_copy(b, j, candidates[static_cast<std::size_t>(c)]).has_value();

        for (std::size_t c = 0; c < candidates.size(); ++c)
            if (hit[c])
                out.supports.push_back(std::move(candidates[c]));
        return out;
    }

    auto TraceMemo::get(const Blockade & b, const OrderedTree & j, Execution exec) -> Trace
    {
        std::ostringstream key;
        key << std::hex << b.fingerprint() << '|' << j.code();
        {
            std::lock_guard guard(_lock);
            auto it = _table.find(key.str());
            if (it != _table.end()) {
                ++_hits;
                return it->second;
            }
        }
        auto t = trace(b, j, exec);
        std::lock_guard guard(_lock);
        _table.insert_or_assign(key.str(), t);
        return t;
    }

    auto TraceMemo::size() const -> std::size_t
    {
        std::lock_guard guard(_lock);
        return _table.size();
    }

    namespace
    {
        auto get_trace(const Blockade & b, const OrderedTree & j, Execution exec, TraceMemo * memo) -> Trace
        {
            return memo ? memo->get(b, j, exec) : trace(b, j, exec);
        }

        auto saturating_mul(std::uint64_t a, std::uint64_t b) -> std::uint64_t
        {
            if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a)
                return std::numeric_limits<std::uint64_t>::max();
            return a * b;
        }

        auto saturating_add(std::uint64_t a, std::uint64_t b) -> std::uint64_t
        {
            return a > std::numeric_limits<std::uint64_t>::max() - b ? std::numeric_limits<std::uint64_t>::max() : a + b;
        }

        auto binomial(int n, int k) -> std::uint64_t
        {
            if (k < 0 || k > n)
                return 0;
            k = std::min(k, n - k);
            std::uint64_t r = 1;
            for (int i = 1; i <= k; ++i) {
                // exact: r * (n - k + i) is divisible by i
                auto num = static_cast<unsigned __int128>(r) * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
                if (num > std::numeric_limits<std::uint64_t>::max())
                    return std::numeric_limits<std::uint64_t>::max();
                r = static_cast<std::uint64_t>(num);
            }
            return r;
        }

        struct Target
        {
            const OrderedTree * tree;
            Support support;
            std::vector<int> positions;
            std::uint64_t cuts;
        };

        auto collect_targets(const Blockade & b, const std::vector<OrderedTree> & trees, int c, Execution exec, TraceMemo * memo)
            -> std::vector<Target>
        {
            std::vector<Target> targets;
            for (auto & j : trees) {
                // a single vertex survives any contraction
                if (j.size() > b.length() || j.size() == 1)
                    continue;
                auto tr = get_trace(b, j, exec, memo);
                for (auto & s : tr.supports) {
                    Target t{&j, s, {}, 1};
                    for (int i : s) {
                        int p = b.position_of(i);
                        t.positions.push_back(p);
                        t.cuts = saturating_mul(t.cuts, binomial(b.block(p).count(), c));
                    }
                    targets.push_back(std::move(t));
                }
            }
            return targets;
        }

        auto make_shrink(const Blockade & b, const Target & t, const std::vector<VertexSet> & cut, bool heuristic) -> TraceShrink
        {
            TraceShrink out{t.tree->code(), t.support, {}, heuristic};
            for (std::size_t i = 0; i < t.positions.size(); ++i)
                out.shrink.emplace(b.index(t.positions[i]), cut[i]);
            return out;
        }

        // Every cut in mixed-radix order, first support block most significant.
        auto exhaustive_target(const Blockade & b, const Target & t, int c, std::uint64_t & checked) -> std::optional<TraceShrink>
        {
            std::size_t m = t.positions.size();
            std::vector<std::vector<std::vector<int>>> choices(m);
            for (std::size_t i = 0; i < m; ++i) {
                auto members = b.block(t.positions[i]).members();
                choices[i] = combinations(members, c);
            }
            std::vector<std::size_t> digit(m, 0);
            std::vector<VertexSet> cut(m, VertexSet(b.host().size()));
            while (true) {
                for (std::size_t i = 0; i < m; ++i) {
                    cut[i] = VertexSet(b.host().size());
                    for (int v : choices[i][digit[i]])
                        cut[i].set(v);
                }
                ++checked;
                if (! find_rainbow_in_blocks(b.host(), *t.tree, cut))
                    return make_shrink(b, t, cut, false);
                std::size_t i = m;
                while (i > 0) {
                    --i;
                    if (++digit[i] < choices[i].size())
                        break;
                    digit[i] = 0;
                    if (i == 0)
                        return std::nullopt;
                }
            }
        }

        auto random_cut(const Blockade & b, const Target & t, int c, Rng & rng) -> std::vector<VertexSet>
        {
            std::vector<VertexSet> cut;
            for (int p : t.positions) {
                auto members = b.block(p).members();
                VertexSet s(b.host().size());
                for (int i = 0; i < c; ++i) {
                    auto k = static_cast<std::size_t>(i) + rng.below(members.size() - static_cast<std::size_t>(i));
                    std::swap(members[static_cast<std::size_t>(i)], members[k]);
                    s.set(members[static_cast<std::size_t>(i)]);
                }
                cut.push_back(std::move(s));
            }
            return cut;
        }

        auto sampled_target(const Blockade & b, const Target & t, int c, std::uint64_t samples, std::uint64_t seed, std::uint64_t & checked)
            -> std::optional<TraceShrink>
        {
            Rng rng(seed);
            for (std::uint64_t s = 0; s < samples; ++s) {
                auto cut = random_cut(b, t, c, rng);
                ++checked;
                if (! find_rainbow_in_blocks(b.host(), *t.tree, cut))
                    return make_shrink(b, t, cut, true);
            }
            return std::nullopt;
        }

        /*
         * Greedy hitting: while a copy survives, delete its vertex from the
         * block with the most slack. Restarts break slack ties at random.
         */
        auto greedy_target(const Blockade & b, const Target & t, int c, std::uint64_t restarts, std::uint64_t seed, std::uint64_t & checked)
            -> std::optional<TraceShrink>
        {
            Rng rng(seed);
            std::size_t m = t.positions.size();
            for (std::uint64_t round = 0; round <= restarts; ++round) {
                std::vector<VertexSet> cut;
                for (int p : t.positions)
                    cut.push_back(b.block(p));
                while (true) {
                    ++checked;
                    auto copy = find_rainbow_in_blocks(b.host(), *t.tree, cut);
                    if (! copy) {
                        for (auto & s : cut)
                            s = s.lowest(c);
                        return make_shrink(b, t, cut, true);
                    }
                    int best_slack = 0;
                    std::vector<std::size_t> best;
                    for (std::size_t i = 0; i < m; ++i) {
                        int slack = cut[i].count() - c;
                        if (slack > best_slack) {
                            best_slack = slack;
                            best.clear();
                        }
                        if (slack == best_slack && slack > 0)
                            best.push_back(i);
                    }
                    if (best.empty())
                        break;
                    std::size_t pick = round == 0 ? best.front() : best[rng.below(best.size())];
                    cut[pick].reset((*copy)[pick]);
                }
            }
            return std::nullopt;
        }
    }

    auto complete_trace_size(int length, int tree_size) -> std::uint64_t
    {
        return binomial(length, tree_size);
    }

    auto is_support_uniform(const Blockade & b, int tau, Execution exec, TraceMemo * memo) -> UniformityVerdict
    {
        for (auto & j : ordered_trees_up_to(tau)) {
            if (j.size() > b.length())
                continue;
            auto tr = get_trace(b, j, exec, memo);
            if (tr.empty() || tr.count() == complete_trace_size(b.length(), j.size()))
                continue;
            UniformityVerdict v{false, j.code(), tr.supports.front(), {}};
            for (auto & s : combinations(b.indices(), j.size()))
                if (! tr.contains(s)) {
                    v.absent = s;
                    break;
                }
            return v;
        }
        return {};
    }

    auto tau_cost(const Blockade & b, int tau, Execution exec, TraceMemo * memo) -> std::uint64_t
    {
        std::uint64_t cost = 0;
        for (auto & j : ordered_trees_up_to(tau))
            if (j.size() <= b.length())
                cost += get_trace(b, j, exec, memo).count();
        return cost;
    }

    auto contraction_floor(const Fraction & kappa, int width) -> int
    {
        return static_cast<int>(std::max<std::int64_t>(1, kappa.ceil_times(width)));
    }

    auto invariance_case_count(const Blockade & b, const Fraction & kappa, int tau, TraceMemo * memo) -> std::uint64_t
    {
        int c = contraction_floor(kappa, b.width());
        auto trees = ordered_trees_up_to(tau);
        std::uint64_t total = 0;
        for (auto & t : collect_targets(b, trees, c, Execution::parallel, memo))
            total = saturating_add(total, t.cuts);
        return total;
    }

    namespace
    {
        /*
         * Run `search` on every target in parallel and keep the first hit in
         * target order. Targets after a known hit are skipped, and only the
         * work on targets up to the hit is counted, so the result and the
         * reported count do not depend on the schedule.
         */
        template <typename Search>
        auto first_hit(const std::vector<Target> & targets, Execution exec, Search search)
            -> std::pair<std::optional<TraceShrink>, std::uint64_t>
        {
            auto count = static_cast<long>(targets.size());
            std::vector<std::optional<TraceShrink>> found(targets.size());
            std::vector<std::uint64_t> checked(targets.size(), 0);
            std::atomic<long> best{count};

#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
            for (long i = 0; i < count; ++i) {
                if (i > best.load(std::memory_order_relaxed))
                    continue;
                auto ui = static_cast<std::size_t>(i);
                found[ui] = search(ui, checked[ui]);
                if (found[ui]) {
                    long cur = best.load();
                    while (i < cur && ! best.compare_exchange_weak(cur, i)) { }
                }
            }

            long stop = std::min(best.load(), count - 1);
            std::uint64_t total = 0;
            for (long i = 0; i <= stop; ++i)
                total = saturating_add(total, checked[static_cast<std::size_t>(i)]);
            if (best.load() < count)
                return {found[static_cast<std::size_t>(best.load())], total};
            return {std::nullopt, total};
        }
    }

    auto is_support_invariant(const Blockade & b, const Fraction & kappa, int tau, const VerifyOptions & opts, TraceMemo * memo)
        -> InvarianceVerdict
    {
        if (b.length() == 0)
            return {};
        int c = contraction_floor(kappa, b.width());
        auto trees = ordered_trees_up_to(tau);
        auto targets = collect_targets(b, trees, c, opts.execution, memo);

        InvarianceVerdict out;
        if (opts.mode == VerifyMode::exhaustive) {
            std::uint64_t total = 0;
            for (auto & t : targets)
                total = saturating_add(total, t.cuts);
            if (total > opts.budget)
                throw BudgetExceeded("is_support_invariant: " + std::to_string(total) + " cuts exceed budget " + std::to_string(opts.budget));
            auto [hit, checked] = first_hit(targets, opts.execution, [&](std::size_t i, std::uint64_t & n) {
                return exhaustive_target(b, targets[i], c, n);
            });
            out.checked = checked;
            if (hit) {
                out.verdict = Verdict::refuted;
                out.witness = std::move(hit);
            }
            return out;
        }

        if (targets.empty())
            return out;
        std::uint64_t per = std::max<std::uint64_t>(1, opts.budget / targets.size());
        auto [hit, checked] = first_hit(targets, opts.execution, [&](std::size_t i, std::uint64_t & n) {
            return sampled_target(b, targets[i], c, per, derive_seed(opts.seed, i), n);
        });
        out.checked = checked;
        if (hit) {
            out.verdict = Verdict::refuted;
            hit->heuristic = false;
            out.witness = std::move(hit);
        }
        else {
            out.verdict = Verdict::unverified;
            out.note = "no refuting cut among " + std::to_string(checked) + " sampled cuts";
        }
        return out;
    }

    auto find_trace_shrink(const Blockade & b, const Fraction & kappa, int tau, const ShrinkSearchOptions & opts, TraceMemo * memo)
        -> ShrinkSearchResult
    {
        int c = contraction_floor(kappa, b.width());
        auto trees = ordered_trees_up_to(tau);
        auto targets = collect_targets(b, trees, c, opts.execution, memo);

        ShrinkSearchResult out;
        for (auto & t : targets)
            if (t.cuts > opts.exhaustive_limit)
                out.exhaustive = false;

        auto [hit, checked] = first_hit(targets, opts.execution, [&](std::size_t i, std::uint64_t & n) -> std::optional<TraceShrink> {
            auto & t = targets[i];
            if (t.cuts <= opts.exhaustive_limit)
                return exhaustive_target(b, t, c, n);
            if (auto g = greedy_target(b, t, c, 8, derive_seed(opts.seed, 2 * i), n))
                return g;
            return sampled_target(b, t, c, opts.samples, derive_seed(opts.seed, 2 * i + 1), n);
        });
        out.found = std::move(hit);
        out.checked = checked;
        return out;
    }
}
