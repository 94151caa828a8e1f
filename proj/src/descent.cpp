#include "purepair/errors.hpp"
#include "purepair/pipeline.hpp"

#include <algorithm>

namespace purepair
{
    auto cost_descent(const Blockade & b, const Fraction & kappa, int tau, const DescentOptions & opts, TraceMemo * memo) -> DescentResult
    {
        if (b.length() == 0)
            throw std::invalid_argument("cost_descent: empty blockade");
        TraceMemo local;
        if (! memo)
            memo = &local;
        auto exec = opts.search.execution;

        DescentResult out{equicardinalize(b, b.width()), {}, tau_cost(b, tau, exec, memo), 0, Verdict::holds, {}};
        std::uint64_t cost = tau_cost(out.blockade, tau, exec, memo);
        while (true) {
            if (static_cast<int>(out.steps.size()) >= opts.max_steps) {
                out.verdict = Verdict::unverified;
                out.note = "step limit reached";
                break;
            }
            auto search = find_trace_shrink(out.blockade, kappa, tau, opts.search, memo);
            if (! search.found) {
                if (! search.exhaustive) {
                    out.verdict = Verdict::unverified;
                    out.note = "some targets were too large for exhaustive search and resisted the heuristics";
                }
                break;
            }
            auto & found = *search.found;
            int w = out.blockade.width();
            int c = contraction_floor(kappa, w);
            auto next = equicardinalize(contraction(out.blockade, found.shrink), c);
            auto next_cost = tau_cost(next, tau, exec, memo);
            if (next_cost >= cost)
                throw std::logic_error("cost_descent: tau-cost did not decrease");
            out.steps.push_back({cost, next_cost, w, c, found.tree, found.support, found.heuristic});
            out.blockade = std::move(next);
            cost = next_cost;
        }
        out.final_cost = cost;
        return out;
    }

    namespace
    {
        /*
         * Largest index set whose t-subsets all have one colour, by
         * include-first branch and bound; the first maximum found is the
         * lexicographically smallest.
         */
        class Homogeneous
        {
        public:
            Homogeneous(int m, int t, const std::vector<Support> & in_trace, bool colour, std::uint64_t budget) :
                _m(m),
                _t(t),
                _in(in_trace),
                _colour(colour),
                _budget(budget)
            {
            }

            auto run() -> std::vector<int>
            {
                std::vector<int> cand(static_cast<std::size_t>(_m));
                for (int i = 0; i < _m; ++i)
                    cand[static_cast<std::size_t>(i)] = i;
                std::vector<int> cur;
                rec(cur, cand);
                return _best;
            }

            auto budget_hit() const -> bool { return _nodes > _budget; }

        private:
            int _m, _t;
            const std::vector<Support> & _in;
            bool _colour;
            std::uint64_t _budget, _nodes = 0;
            std::vector<int> _best;

            auto colour_of(std::vector<int> s) const -> bool
            {
                std::sort(s.begin(), s.end());
                return std::binary_search(_in.begin(), _in.end(), s);
            }

            // all (t-2)-subsets of cur, plus v and c, have the right colour
            auto compatible(const std::vector<int> & cur, int v, int c) const -> bool
            {
                int need = _t - 2;
                if (static_cast<int>(cur.size()) < need)
                    return true;
                for (auto & sub : combinations(cur, need)) {
                    sub.push_back(v);
                    sub.push_back(c);
                    if (colour_of(sub) != _colour)
                        return false;
                }
                return true;
            }

            auto rec(std::vector<int> & cur, const std::vector<int> & cand) -> void
            {
                if (cur.size() > _best.size())
                    _best = cur;
                if (++_nodes > _budget)
                    return;
                for (std::size_t i = 0; i < cand.size(); ++i) {
                    if (cur.size() + (cand.size() - i) <= _best.size() || _nodes > _budget)
                        return;
                    int v = cand[i];
                    std::vector<int> next;
                    for (std::size_t j = i + 1; j < cand.size(); ++j)
                        if (compatible(cur, v, cand[j]))
                            next.push_back(cand[j]);
                    cur.push_back(v);
                    rec(cur, next);
                    cur.pop_back();
                }
            }
        };
    }

    auto extract_support_uniform(const Blockade & b, int k, int tau, const ExtractOptions & opts, TraceMemo * memo) -> ExtractResult
    {
        if (k < 1)
            throw std::invalid_argument("extract_support_uniform: k must be positive");
        TraceMemo local;
        if (! memo)
            memo = &local;
        auto surviving = b.indices();
        ExtractResult out{b, {}, false};
        for (auto & j : ordered_trees_up_to(tau)) {
            int t = j.size();
            if (t == 1 || t > static_cast<int>(surviving.size())) {
                out.rounds.emplace_back(j.code(), static_cast<int>(surviving.size()));
                continue;
            }
            auto sub = sub_blockade(b, surviving);
            auto tr = memo->get(sub, j, opts.execution);
            if (tr.empty() || tr.count() == complete_trace_size(sub.length(), t)) {
                out.rounds.emplace_back(j.code(), static_cast<int>(surviving.size()));
                continue;
            }
            // supports as positions into `surviving`
            std::vector<Support> in;
            for (auto & s : tr.supports) {
                Support p;
                for (int i : s)
                    p.push_back(static_cast<int>(std::lower_bound(surviving.begin(), surviving.end(), i) - surviving.begin()));
                in.push_back(std::move(p));
            }
            std::sort(in.begin(), in.end());
            auto m = static_cast<int>(surviving.size());
            Homogeneous present(m, t, in, true, opts.node_budget);
            auto best = present.run();
            Homogeneous absent(m, t, in, false, opts.node_budget);
            auto other = absent.run();
            out.budget_hit = out.budget_hit || present.budget_hit() || absent.budget_hit();
            if (other.size() > best.size())
                best = std::move(other);
            std::vector<int> next;
            for (int p : best)
                next.push_back(surviving[static_cast<std::size_t>(p)]);
            surviving = std::move(next);
            out.rounds.emplace_back(j.code(), static_cast<int>(surviving.size()));
        }
        if (static_cast<int>(surviving.size()) < k)
            throw InsufficientLength(std::to_string(surviving.size()) + " uniform indices survive, " + std::to_string(k) + " requested");
        surviving.resize(static_cast<std::size_t>(k));
        out.blockade = sub_blockade(b, surviving);
        return out;
    }

    auto get_minor(const Blockade & b, int k, const Fraction & kappa, int tau, const DescentOptions & dopts, const ExtractOptions & eopts,
        TraceMemo * memo) -> MinorResult
    {
        TraceMemo local;
        if (! memo)
            memo = &local;
        auto descent = cost_descent(b, kappa, tau, dopts, memo);
        auto extract = extract_support_uniform(descent.blockade, k, tau, eopts, memo);
        auto blockade = extract.blockade;
        MinorResult out{std::move(descent), std::move(extract), blockade, is_support_uniform(blockade, tau, eopts.execution, memo), {}};
        try {
            out.invariant = is_support_invariant(blockade, kappa, tau, dopts.verify, memo);
        }
        catch (const BudgetExceeded & e) {
            out.invariant.verdict = Verdict::unverified;
            out.invariant.note = e.what();
        }
        return out;
    }
}
