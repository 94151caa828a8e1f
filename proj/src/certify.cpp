#include "purepair/certify.hpp"
#include "purepair/errors.hpp"
#include "purepair/trees.hpp"

#include <algorithm>
#include <atomic>
#include <stdexcept>

namespace purepair
{
    namespace
    {
        class InducedSearch
        {
        public:
            InducedSearch(const Graph & g, const Graph & p) :
                _g(g),
                _p(p),
                _image(static_cast<std::size_t>(p.size()), -1),
                _used(g.size())
            {
                // components in order of their lowest vertex, BFS inside each
                std::vector<char> seen(static_cast<std::size_t>(p.size()), 0);
                for (int s = 0; s < p.size(); ++s) {
                    if (seen[static_cast<std::size_t>(s)])
                        continue;
                    seen[static_cast<std::size_t>(s)] = 1;
                    std::size_t head = _order.size();
                    _order.push_back(s);
                    _parent.push_back(-1);
                    for (; head < _order.size(); ++head) {
                        int u = _order[head];
                        p.neighbours(u).for_each([&](int v) {
                            if (! seen[static_cast<std::size_t>(v)]) {
                                seen[static_cast<std::size_t>(v)] = 1;
                                _order.push_back(v);
                                _parent.push_back(u);
                            }
                        });
                    }
                }
            }

            auto run() -> std::optional<std::vector<int>>
            {
                if (_p.size() > _g.size())
                    return std::nullopt;
                if (rec(0))
                    return _image;
                return std::nullopt;
            }

        private:
            const Graph & _g;
            const Graph & _p;
            std::vector<int> _order, _parent, _image;
            VertexSet _used;

            auto rec(std::size_t i) -> bool
            {
                if (i == _order.size())
                    return true;
                int p = _order[i];
                int par = _parent[i];
                VertexSet cand = par == -1 ? VertexSet::full(_g.size()) : _g.neighbours(_image[static_cast<std::size_t>(par)]);
                cand -= _used;
                for (std::size_t j = 0; j < i && ! cand.empty(); ++j) {
                    int q = _order[j];
                    if (q == par)
                        continue;
                    auto & nb = _g.neighbours(_image[static_cast<std::size_t>(q)]);
                    if (_p.adjacent(p, q))
                        cand &= nb;
                    else
                        cand -= nb;
                }
                int need = _p.degree(p);
                for (int v = cand.first(); v != -1; v = cand.next(v)) {
                    if (_g.degree(v) < need)
                        continue;
                    _image[static_cast<std::size_t>(p)] = v;
                    _used.set(v);
                    if (rec(i + 1))
                        return true;
                    _used.reset(v);
                }
                _image[static_cast<std::size_t>(p)] = -1;
                return false;
            }
        };
    }

    auto find_induced_forest(const Graph & g, const Graph & pattern, int pattern_budget) -> std::optional<std::vector<int>>
    {
        if (pattern.size() > pattern_budget)
            throw BudgetExceeded("find_induced_forest: pattern has " + std::to_string(pattern.size()) + " vertices, budget "
                + std::to_string(pattern_budget));
        if (pattern.size() == 0)
            return std::vector<int>{};
        return InducedSearch(g, pattern).run();
    }

    auto verify_induced(const Graph & g, const Graph & pattern, const std::vector<int> & image) -> std::string
    {
        if (static_cast<int>(image.size()) != pattern.size())
            return "image has " + std::to_string(image.size()) + " entries for " + std::to_string(pattern.size()) + " pattern vertices";
        for (std::size_t i = 0; i < image.size(); ++i) {
            if (image[i] < 0 || image[i] >= g.size())
                return "image of " + std::to_string(i) + " out of range";
            for (std::size_t j = 0; j < i; ++j) {
                if (image[i] == image[j])
                    return "pattern vertices " + std::to_string(j) + " and " + std::to_string(i) + " share an image";
                if (g.adjacent(image[i], image[j]) != pattern.adjacent(static_cast<int>(i), static_cast<int>(j)))
                    return "adjacency of " + std::to_string(j) + "," + std::to_string(i) + " not preserved";
            }
        }
        return {};
    }

    auto pair_mode_name(PairMode m) -> const char *
    {
        return m == PairMode::exact ? "exact" : "heuristic";
    }

    auto pair_status_name(PairStatus s) -> const char *
    {
        switch (s) {
        case PairStatus::found:
            return "found";
        case PairStatus::none:
            return "none";
        case PairStatus::unknown:
            return "unknown";
        }
        return "?";
    }

    namespace
    {
        struct PairSearch
        {
            const Graph & g;
            int k;
            const std::vector<VertexSet> & closed_nb;
            std::uint64_t nodes = 0;
            std::vector<int> chosen;

            // extend A (chosen) with vertices >= start; closed = A plus N(A)
            auto rec(int start, const VertexSet & closed) -> bool
            {
                ++nodes;
                int n = g.size();
                if (n - closed.count() < k)
                    return false;
                if (static_cast<int>(chosen.size()) == k)
                    return true;
                int missing = k - static_cast<int>(chosen.size());
                for (int v = start; v <= n - missing; ++v) {
                    auto next = closed | closed_nb[static_cast<std::size_t>(v)];
                    if (n - next.count() < k)
                        continue;
                    chosen.push_back(v);
                    if (rec(v + 1, next))
                        return true;
                    chosen.pop_back();
                }
                return false;
            }
        };

        auto closed_neighbourhoods(const Graph & g) -> std::vector<VertexSet>
        {
            std::vector<VertexSet> out;
            for (int v = 0; v < g.size(); ++v) {
                auto s = g.neighbours(v);
                s.set(v);
                out.push_back(std::move(s));
            }
            return out;
        }

        auto with_partner(const Graph & g, int k, const VertexSet & a, PairMode mode) -> AnticompletePair
        {
            auto partner = ~(neighbourhood_of_set(g, a) | a);
            return {PairStatus::found, a, partner.lowest(k), mode, 0};
        }
    }

    auto find_anticomplete_pair(const Graph & g, int k, const PairOptions & opts) -> AnticompletePair
    {
        if (k < 1)
            throw std::invalid_argument("find_anticomplete_pair: k must be positive");
        int n = g.size();
        AnticompletePair none{PairStatus::none, VertexSet(n), VertexSet(n), opts.mode, 0};
        if (2 * k > n)
            return none;
        auto cnb = closed_neighbourhoods(g);

        if (opts.mode == PairMode::heuristic) {
            none.status = PairStatus::unknown;
            int starts = opts.restarts > 0 ? std::min(opts.restarts, n) : n;
            for (int s = 0; s < starts; ++s) {
                VertexSet a(n);
                a.set(s);
                auto closed = cnb[static_cast<std::size_t>(s)];
                while (a.count() < k) {
                    int best = -1, best_size = n + 1;
                    for (int u = 0; u < n; ++u) {
                        if (a.test(u))
                            continue;
                        int size = (closed | cnb[static_cast<std::size_t>(u)]).count();
                        if (size < best_size) {
                            best = u;
                            best_size = size;
                        }
                    }
                    a.set(best);
                    closed |= cnb[static_cast<std::size_t>(best)];
                }
                ++none.nodes;
                if (n - closed.count() >= k) {
                    auto out = with_partner(g, k, a, PairMode::heuristic);
                    out.nodes = none.nodes;
                    return out;
                }
            }
            return none;
        }

        // one task per smallest vertex of A
        long count = n - k + 1;
        std::vector<std::optional<std::vector<int>>> found(static_cast<std::size_t>(count));
        std::vector<std::uint64_t> nodes(static_cast<std::size_t>(count), 0);
        std::atomic<long> best{count};
#pragma omp parallel for schedule(dynamic, 1) if (opts.execution == Execution::parallel)
        for (long v = 0; v < count; ++v) {
            if (v > best.load(std::memory_order_relaxed))
                continue;
            PairSearch search{g, k, cnb, 0, {static_cast<int>(v)}};
            auto & start = cnb[static_cast<std::size_t>(v)];
            bool hit = n - start.count() >= k && search.rec(static_cast<int>(v) + 1, start);
            nodes[static_cast<std::size_t>(v)] = search.nodes + 1;
            if (hit) {
                found[static_cast<std::size_t>(v)] = search.chosen;
                long cur = best.load();
                while (v < cur && ! best.compare_exchange_weak(cur, v)) { }
            }
        }
        long b = best.load();
        for (long v = 0; v < std::min(b + 1, count); ++v)
            none.nodes += nodes[static_cast<std::size_t>(v)];
        if (b == count)
            return none;
        auto out = with_partner(g, k, VertexSet::from(n, *found[static_cast<std::size_t>(b)]), PairMode::exact);
        out.nodes = none.nodes;
        return out;
    }

    auto max_anticomplete_value(const Graph & g, int bound, bool allow_large, Execution exec) -> AnticompleteValue
    {
        int n = g.size();
        if (n > bound && ! allow_large)
            throw BudgetExceeded("max_anticomplete_value: n = " + std::to_string(n) + " exceeds the exact bound " + std::to_string(bound));
        AnticompleteValue out{0, VertexSet(n), VertexSet(n)};
        for (int k = 1; 2 * k <= n; ++k) {
            auto p = find_anticomplete_pair(g, k, {PairMode::exact, exec, 0, 0});
            if (p.status != PairStatus::found)
                break;
            out = {k, p.a, p.b};
        }
        return out;
    }

    auto epsilon_threshold(const Fraction & eps, int n) -> int
    {
        return static_cast<int>(std::max<std::int64_t>(1, eps.ceil_times(n)));
    }

    auto is_epsilon_coherent(const Graph & g, const Fraction & eps, const CoherenceOptions & opts) -> CoherenceVerdict
    {
        if (eps.num() <= 0)
            throw std::invalid_argument("is_epsilon_coherent: epsilon must be positive");
        CoherenceVerdict out;
        int n = g.size();
        if (n <= 1) {
            out.verdict = Verdict::refuted;
            out.reason = "order";
            return out;
        }
        auto deg = max_degree(g);
        if (eps.le_ratio(deg.degree, n)) {
            out.verdict = Verdict::refuted;
            out.reason = "degree";
            out.vertex = deg.vertex;
            out.degree = deg.degree;
            return out;
        }
        out.pair_mode = n <= opts.exact_bound ? PairMode::exact : PairMode::heuristic;
        auto p = find_anticomplete_pair(g, epsilon_threshold(eps, n), {out.pair_mode, opts.execution, 0, opts.seed});
        if (p.status == PairStatus::found) {
            out.verdict = Verdict::refuted;
            out.reason = "pair";
            out.pair = std::move(p);
        }
        else if (p.status == PairStatus::unknown) {
            out.verdict = Verdict::unverified;
            out.reason = "pair search inconclusive in heuristic mode";
        }
        return out;
    }

    auto certificate_kind_name(CertificateKind k) -> const char *
    {
        switch (k) {
        case CertificateKind::induced_copy:
            return "induced_copy";
        case CertificateKind::high_degree:
            return "high_degree";
        case CertificateKind::anticomplete_pair:
            return "anticomplete_pair";
        case CertificateKind::not_found:
            return "not_found";
        }
        return "?";
    }

    auto certify_trichotomy(const Graph & g, const Graph & forest, const Fraction & eps, const CertifyOptions & opts) -> Certificate
    {
        int n = g.size();
        if (eps.num() <= 0 || n < 2)
            throw std::invalid_argument("certify_trichotomy: need eps > 0 and n >= 2");
        if (! is_forest(forest))
            throw std::invalid_argument("certify_trichotomy: pattern is not a forest");
        Certificate c;
        c.threshold = epsilon_threshold(eps, n);
        c.a = c.b = VertexSet(n);

        auto deg = max_degree(g);
        c.log.push_back("degree: max " + std::to_string(deg.degree) + " vs " + std::to_string(c.threshold));
        if (deg.degree >= c.threshold) {
            c.kind = CertificateKind::high_degree;
            c.vertex = deg.vertex;
            c.degree = deg.degree;
            return c;
        }
        auto copy = find_induced_forest(g, forest, opts.pattern_budget);
        c.log.push_back(std::string("induced copy: ") + (copy ? "found" : "none (exact)"));
        if (copy) {
            c.kind = CertificateKind::induced_copy;
            c.embedding = std::move(*copy);
            return c;
        }
        c.pair_mode = n <= opts.exact_bound ? PairMode::exact : PairMode::heuristic;
        auto p = find_anticomplete_pair(g, c.threshold, {c.pair_mode, opts.execution, 0, opts.seed});
        c.log.push_back(std::string("anticomplete pair: ") + pair_status_name(p.status) + " (" + pair_mode_name(c.pair_mode) + ")");
        if (p.status == PairStatus::found) {
            c.kind = CertificateKind::anticomplete_pair;
            c.a = p.a;
            c.b = p.b;
        }
        return c;
    }

    auto verify_certificate(const Graph & g, const Graph & forest, const Fraction & eps, const Certificate & c) -> std::string
    {
        int n = g.size();
        std::int64_t need = std::max<std::int64_t>(1, eps.ceil_times(n));
        switch (c.kind) {
        case CertificateKind::high_degree:
            if (c.vertex < 0 || c.vertex >= n)
                return "vertex out of range";
            if (g.degree(c.vertex) != c.degree)
                return "recorded degree differs from the graph";
            if (c.degree < need)
                return "degree below ceil(eps n)";
            return {};
        case CertificateKind::induced_copy:
            return verify_induced(g, forest, c.embedding);
        case CertificateKind::anticomplete_pair:
            if (c.a.intersects(c.b))
                return "A and B intersect";
            if (c.a.count() < need || c.b.count() < need)
                return "a side is smaller than ceil(eps n)";
            if (! are_anticomplete(g, c.a, c.b))
                return "A and B are not anticomplete";
            return {};
        case CertificateKind::not_found:
            return "not a certificate";
        }
        return "unknown kind";
    }

    auto pure_pair(const Graph & g, int k, Execution exec) -> std::optional<PurePair>
    {
        auto p = find_anticomplete_pair(g, k, {PairMode::exact, exec, 0, 0});
        if (p.status == PairStatus::found)
            return PurePair{p.a, p.b, Polarity::anticomplete};
        auto q = find_anticomplete_pair(complement(g), k, {PairMode::exact, exec, 0, 0});
        if (q.status == PairStatus::found)
            return PurePair{q.a, q.b, Polarity::complete};
        return std::nullopt;
    }
}
