#include "purepair/concavity.hpp"
#include "purepair/errors.hpp"
#include "purepair/rng.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace purepair
{
    auto covered_count(const Blockade & b, const VertexSet & x, int position) -> int
    {
        return (neighbourhood_of_set(b.host(), x) & b.block(position)).count();
    }

    namespace
    {
        auto checked_position(const Blockade & b, const VertexSet & x, int index) -> int
        {
            int p = b.position_of(index);
            if (p == -1)
                throw std::invalid_argument("block index " + std::to_string(index) + " not in blockade");
            if (x.intersects(b.block(p)))
                throw std::invalid_argument("X meets block " + std::to_string(index));
            return p;
        }
    }

    auto lambda_cover(const Blockade & b, const VertexSet & x, int index, const Fraction & lambda) -> bool
    {
        int p = checked_position(b, x, index);
        return lambda.le_ratio(covered_count(b, x, p), b.width());
    }

    auto lambda_miss(const Blockade & b, const VertexSet & x, int index, const Fraction & lambda) -> bool
    {
        int p = checked_position(b, x, index);
        return lambda.le_ratio(b.block(p).count() - covered_count(b, x, p), b.width());
    }

    namespace
    {
        struct Triple
        {
            int a, b, c;
        };

        class TripleContext
        {
        public:
            TripleContext(const Blockade & blk, const Triple & t, int need) :
                _g(blk.host()),
                _blk(blk),
                _t(t),
                _need(need),
                _rest(blk.vertices()),
                _free(blk.host().size())
            {
                _rest -= blk.block(t.a);
                _rest -= blk.block(t.b);
                _rest -= blk.block(t.c);
                auto outer = blk.block(t.a) | blk.block(t.c);
                _rest.for_each([&](int v) {
                    auto & nb = _g.neighbours(v);
                    if (! nb.intersects(outer))
                        _free.set(v);
                    else if (nb.intersects(blk.block(t.b)))
                        _useful.push_back(v);
                });
                // most middle-block coverage first
                std::stable_sort(_useful.begin(), _useful.end(), [&](int u, int v) {
                    return _g.neighbours(u).intersection_count(blk.block(t.b)) > _g.neighbours(v).intersection_count(blk.block(t.b));
                });
            }

            auto rest() const -> const VertexSet & { return _rest; }
            auto free() const -> const VertexSet & { return _free; }
            auto useful() const -> const std::vector<int> & { return _useful; }

            auto refutes(const VertexSet & x) const -> bool
            {
                auto nx = neighbourhood_of_set(_g, x);
                return nx.intersection_count(_blk.block(_t.b)) >= _need
                    && _blk.block(_t.a).count() - nx.intersection_count(_blk.block(_t.a)) >= _need
                    && _blk.block(_t.c).count() - nx.intersection_count(_blk.block(_t.c)) >= _need;
            }

            /// Exhaustive search; returns the witness, or nullopt. Sets `exceeded` when the node budget runs out.
            auto search(std::uint64_t budget, std::uint64_t & nodes, bool & exceeded) -> std::optional<VertexSet>
            {
                if (refutes(_free))
                    return _free;
                int n = _g.size();
                std::size_t m = _useful.size();
                _suffix.assign(m + 1, VertexSet(n));
                for (std::size_t i = m; i > 0; --i)
                    _suffix[i - 1] = _suffix[i] | _g.neighbours(_useful[i - 1]);
                VertexSet x = _free;
                VertexSet nx = neighbourhood_of_set(_g, _free);
                std::optional<VertexSet> found;
                dfs(0, x, nx, budget, nodes, exceeded, found);
                return found;
            }

        private:
            const Graph & _g;
            const Blockade & _blk;
            Triple _t;
            int _need;
            VertexSet _rest, _free;
            std::vector<int> _useful;
            std::vector<VertexSet> _suffix;

            auto misses(const VertexSet & nx) const -> bool
            {
                return _blk.block(_t.a).count() - nx.intersection_count(_blk.block(_t.a)) >= _need
                    && _blk.block(_t.c).count() - nx.intersection_count(_blk.block(_t.c)) >= _need;
            }

            auto dfs(std::size_t i, VertexSet & x, const VertexSet & nx, std::uint64_t budget, std::uint64_t & nodes, bool & exceeded,
                std::optional<VertexSet> & found) -> void
            {
                if (found || exceeded)
                    return;
                if (++nodes > budget) {
                    exceeded = true;
                    return;
                }
                if (nx.intersection_count(_blk.block(_t.b)) >= _need) {
                    found = x;
                    return;
                }
                if (i == _useful.size() || (nx | _suffix[i]).intersection_count(_blk.block(_t.b)) < _need)
                    return;
                int v = _useful[i];
                auto with = nx | _g.neighbours(v);
                if (misses(with)) {
                    x.set(v);
                    dfs(i + 1, x, with, budget, nodes, exceeded, found);
                    x.reset(v);
                }
                dfs(i + 1, x, nx, budget, nodes, exceeded, found);
            }
        };

        auto triples_of(int k) -> std::vector<Triple>
        {
            std::vector<Triple> out;
            for (int a = 0; a < k; ++a)
                for (int b = a + 1; b < k; ++b)
                    for (int c = b + 1; c < k; ++c)
                        out.push_back({a, b, c});
            return out;
        }

        auto sampled_triple(const Blockade & blk, const TripleContext & ctx, const Triple & t, int need, std::uint64_t samples,
            std::uint64_t seed, std::uint64_t & checked) -> std::optional<VertexSet>
        {
            const Graph & g = blk.host();
            int n = g.size();
            auto attempt = [&](const VertexSet & x) -> bool {
                if (checked >= samples)
                    return false;
                ++checked;
                return ctx.refutes(x);
            };

            if (attempt(ctx.free()))
                return ctx.free();

            // greedy growth from the free set while both outer blocks stay missed
            {
                VertexSet x = ctx.free();
                auto nx = neighbourhood_of_set(g, x);
                for (int v : ctx.useful()) {
                    auto with = nx | g.neighbours(v);
                    if (blk.block(t.a).count() - with.intersection_count(blk.block(t.a)) >= need
                        && blk.block(t.c).count() - with.intersection_count(blk.block(t.c)) >= need) {
                        x.set(v);
                        nx = std::move(with);
                    }
                }
                if (attempt(x))
                    return x;
            }

            std::vector<int> others;
            for (int p = 0; p < blk.length(); ++p)
                if (p != t.a && p != t.b && p != t.c)
                    others.push_back(p);
            for (int p : others)
                if (attempt(blk.block(p)))
                    return blk.block(p);
            for (std::size_t i = 0; i < others.size(); ++i)
                for (std::size_t j = i + 1; j < others.size(); ++j) {
                    auto x = blk.block(others[i]) | blk.block(others[j]);
                    if (attempt(x))
                        return x;
                }
            bool found = false;
            VertexSet slice_hit(n);
            blk.block(t.b).for_each([&](int v) {
                if (found)
                    return;
                auto x = g.neighbours(v) & ctx.rest();
                if (attempt(x)) {
                    found = true;
                    slice_hit = x;
                    return;
                }
                x |= ctx.free();
                if (attempt(x)) {
                    found = true;
                    slice_hit = x;
                }
            });
            if (found)
                return slice_hit;

            Rng rng(seed);
            auto members = ctx.rest().members();
            for (unsigned round = 0; checked < samples; ++round) {
                double p = 1.0 / static_cast<double>(2u << (round % 5));
                VertexSet x = ctx.free();
                for (int v : members)
                    if (rng.bernoulli(p))
                        x.set(v);
                if (attempt(x))
                    return x;
            }
            return std::nullopt;
        }
    }

    auto is_concave(const Blockade & b, const Fraction & lambda, const VerifyOptions & opts) -> ConcavityVerdict
    {
        if (! b.is_equicardinal())
            throw std::invalid_argument("is_concave: blockade is not equicardinal");
        ConcavityVerdict out;
        if (b.length() < 3)
            return out;
        int need = static_cast<int>(std::max<std::int64_t>(1, lambda.ceil_times(b.width())));
        auto triples = triples_of(b.length());
        auto count = static_cast<long>(triples.size());
        std::vector<std::optional<VertexSet>> found(triples.size());
        std::vector<std::uint64_t> checked(triples.size(), 0);
        std::vector<char> exceeded(triples.size(), 0);
        std::uint64_t per = opts.mode == VerifyMode::sampled ? (opts.budget + triples.size() - 1) / triples.size() : opts.budget;
        std::atomic<long> best{count};

#pragma omp parallel for schedule(dynamic, 1) if (opts.execution == Execution::parallel)
        for (long i = 0; i < count; ++i) {
            if (i > best.load(std::memory_order_relaxed))
                continue;
            auto ui = static_cast<std::size_t>(i);
            TripleContext ctx(b, triples[ui], need);
            if (opts.mode == VerifyMode::exhaustive) {
                bool ex = false;
                found[ui] = ctx.search(per, checked[ui], ex);
                exceeded[ui] = ex;
            }
            else
                found[ui] = sampled_triple(b, ctx, triples[ui], need, per, derive_seed(opts.seed, ui), checked[ui]);
            if (found[ui] || exceeded[ui]) {
                long cur = best.load();
                while (i < cur && ! best.compare_exchange_weak(cur, i)) { }
            }
        }

        for (std::size_t i = 0; i < triples.size(); ++i) {
            out.checked += checked[i];
            if (exceeded[i])
                throw BudgetExceeded("is_concave: search for triple (" + std::to_string(b.index(triples[i].a)) + ","
                    + std::to_string(b.index(triples[i].b)) + "," + std::to_string(b.index(triples[i].c)) + ") exceeds "
                    + std::to_string(opts.budget) + " nodes");
            if (found[i]) {
                auto & t = triples[i];
                out.verdict = Verdict::refuted;
                out.witness = ConcavityWitness{b.index(t.a), b.index(t.b), b.index(t.c), *found[i]};
                return out;
            }
        }
        if (opts.mode == VerifyMode::sampled) {
            out.verdict = Verdict::unverified;
            out.note = "no refuting set among " + std::to_string(out.checked) + " sampled sets";
        }
        return out;
    }

    auto check_concavity_witness(const Blockade & b, const Fraction & lambda, const ConcavityWitness & w) -> bool
    {
        if (! (w.h1 < w.h2 && w.h2 < w.h3))
            return false;
        for (int h : {w.h1, w.h2, w.h3}) {
            int p = b.position_of(h);
            if (p == -1 || w.x.intersects(b.block(p)))
                return false;
        }
        if (! w.x.is_subset_of(b.vertices()))
            return false;
        return lambda_cover(b, w.x, w.h2, lambda) && lambda_miss(b, w.x, w.h1, lambda) && lambda_miss(b, w.x, w.h3, lambda);
    }
}
