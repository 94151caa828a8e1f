#pragma once

// Brute-force reference implementations for tiny instances. These only read
// adjacency and block membership from the library types; nothing here calls
// a library search.

#include "purepair/blockade.hpp"
#include "purepair/fraction.hpp"
#include "purepair/graph.hpp"
#include "purepair/rng.hpp"
#include "purepair/trees.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <numeric>
#include <set>
#include <vector>

namespace oracle
{
    using namespace purepair;

    inline auto row_mask(const Graph & g, int v) -> std::uint32_t
    {
        std::uint32_t m = 0;
        for (int u = 0; u < g.size(); ++u)
            if (g.adjacent(v, u))
                m |= 1u << u;
        return m;
    }

    // max over A of min(|A|, |V - A - N(A)|), via closure over all 2^n masks
    inline auto max_anticomplete(const Graph & g) -> int
    {
        int n = g.size();
        std::vector<std::uint32_t> adj(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v)
            adj[static_cast<std::size_t>(v)] = row_mask(g, v);
        std::uint32_t full = n == 32 ? ~0u : (1u << n) - 1;
        std::vector<std::uint32_t> nb(std::size_t{1} << n, 0);
        int best = 0;
        for (std::uint32_t mask = 1; mask <= full && mask != 0; ++mask) {
            auto low = std::countr_zero(mask);
            nb[mask] = nb[mask & (mask - 1)] | adj[static_cast<std::size_t>(low)];
            auto partner = full & ~(mask | nb[mask]);
            best = std::max(best, std::min(std::popcount(mask), std::popcount(partner)));
        }
        return best;
    }

    inline auto is_anticomplete_pair(const Graph & g, const VertexSet & a, const VertexSet & b, int k) -> bool
    {
        if (a.count() != k || b.count() != k)
            return false;
        for (int u = 0; u < g.size(); ++u) {
            if (a.test(u) && b.test(u))
                return false;
            if (! a.test(u))
                continue;
            for (int v = 0; v < g.size(); ++v)
                if (b.test(v) && g.adjacent(u, v))
                    return false;
        }
        return true;
    }

    // injective tuples with prefix pruning on adjacency
    inline auto induced_copy(const Graph & g, const Graph & f) -> bool
    {
        int m = f.size(), n = g.size();
        std::vector<int> tuple;
        std::vector<char> used(static_cast<std::size_t>(n), 0);
        auto rec = [&](auto & self) -> bool {
            auto p = static_cast<int>(tuple.size());
            if (p == m)
                return true;
            for (int v = 0; v < n; ++v) {
                if (used[static_cast<std::size_t>(v)])
                    continue;
                bool ok = true;
                for (int q = 0; q < p && ok; ++q)
                    ok = g.adjacent(tuple[static_cast<std::size_t>(q)], v) == f.adjacent(q, p);
                if (! ok)
                    continue;
                used[static_cast<std::size_t>(v)] = 1;
                tuple.push_back(v);
                if (self(self))
                    return true;
                tuple.pop_back();
                used[static_cast<std::size_t>(v)] = 0;
            }
            return false;
        };
        return rec(rec);
    }

    inline auto is_induced_copy(const Graph & g, const Graph & f, const std::vector<int> & image) -> bool
    {
        if (static_cast<int>(image.size()) != f.size())
            return false;
        std::set<int> seen(image.begin(), image.end());
        if (static_cast<int>(seen.size()) != f.size())
            return false;
        for (int p = 0; p < f.size(); ++p)
            for (int q = p + 1; q < f.size(); ++q)
                if (g.adjacent(image[static_cast<std::size_t>(p)], image[static_cast<std::size_t>(q)]) != f.adjacent(p, q))
                    return false;
        return true;
    }

    inline auto edge_mask_graph(int m, std::uint32_t mask) -> Graph
    {
        Graph g(m);
        int bit = 0;
        for (int u = 0; u < m; ++u)
            for (int v = u + 1; v < m; ++v, ++bit)
                if (mask >> bit & 1)
                    g.add_edge(u, v);
        return g;
    }

    inline auto acyclic(int m, std::uint32_t mask) -> bool
    {
        std::vector<int> up(static_cast<std::size_t>(m));
        std::iota(up.begin(), up.end(), 0);
        auto find = [&](int x) {
            while (up[static_cast<std::size_t>(x)] != x)
                x = up[static_cast<std::size_t>(x)];
            return x;
        };
        int bit = 0;
        for (int u = 0; u < m; ++u)
            for (int v = u + 1; v < m; ++v, ++bit)
                if (mask >> bit & 1) {
                    auto a = find(u), b = find(v);
                    if (a == b)
                        return false;
                    up[static_cast<std::size_t>(a)] = b;
                }
        return true;
    }

    // smallest edge mask over all relabellings
    inline auto canonical_mask(int m, std::uint32_t mask) -> std::uint32_t
    {
        std::vector<int> perm(static_cast<std::size_t>(m));
        std::iota(perm.begin(), perm.end(), 0);
        auto g = edge_mask_graph(m, mask);
        std::uint32_t best = ~0u;
        do {
            std::uint32_t code = 0;
            int bit = 0;
            for (int u = 0; u < m; ++u)
                for (int v = u + 1; v < m; ++v, ++bit)
                    if (g.adjacent(perm[static_cast<std::size_t>(u)], perm[static_cast<std::size_t>(v)]))
                        code |= 1u << bit;
            best = std::min(best, code);
        } while (std::next_permutation(perm.begin(), perm.end()));
        return best;
    }

    // one representative per isomorphism class of forests on m vertices
    inline auto forests(int m) -> std::vector<Graph>
    {
        std::set<std::uint32_t> codes;
        int pairs = m * (m - 1) / 2;
        for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask)
            if (acyclic(m, mask))
                codes.insert(canonical_mask(m, mask));
        std::vector<Graph> out;
        for (auto c : codes)
            out.push_back(edge_mask_graph(m, c));
        return out;
    }

    // ordered trees on m labels: edge subsets of size m-1 without cycles
    inline auto ordered_trees(int m) -> std::vector<std::vector<Edge>>
    {
        std::vector<std::vector<Edge>> out;
        int pairs = m * (m - 1) / 2;
        for (std::uint32_t mask = 0; mask < (1u << pairs); ++mask) {
            if (std::popcount(mask) != m - 1 || ! acyclic(m, mask))
                continue;
            std::vector<Edge> edges;
            int bit = 0;
            for (int u = 0; u < m; ++u)
                for (int v = u + 1; v < m; ++v, ++bit)
                    if (mask >> bit & 1)
                        edges.emplace_back(u, v);
            out.push_back(edges);
        }
        return out;
    }

    inline auto subsets(int n, int k) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
            if (std::popcount(mask) == k) {
                std::vector<int> s;
                for (int i = 0; i < n; ++i)
                    if (mask >> i & 1)
                        s.push_back(i);
                out.push_back(s);
            }
        std::sort(out.begin(), out.end());
        return out;
    }

    inline auto block_members(const Blockade & b, int position) -> std::vector<int>
    {
        std::vector<int> out;
        for (int v = 0; v < b.host().size(); ++v)
            if (b.block(position).test(v))
                out.push_back(v);
        return out;
    }

    // label k in the k-th block of the support (given as positions)
    inline auto copy_on_positions(const Blockade & b, const OrderedTree & j, const std::vector<int> & positions) -> bool
    {
        int m = j.size();
        std::vector<std::vector<int>> blocks;
        for (auto p : positions)
            blocks.push_back(block_members(b, p));
        std::vector<int> tuple;
        auto rec = [&](auto & self) -> bool {
            auto p = static_cast<int>(tuple.size());
            if (p == m)
                return true;
            for (int v : blocks[static_cast<std::size_t>(p)]) {
                bool ok = true;
                for (int q = 0; q < p && ok; ++q)
                    ok = b.host().adjacent(tuple[static_cast<std::size_t>(q)], v) == j.adjacent(q, p);
                if (! ok)
                    continue;
                tuple.push_back(v);
                if (self(self))
                    return true;
                tuple.pop_back();
            }
            return false;
        };
        return rec(rec);
    }

    // supports as sorted lists of block indices
    inline auto trace(const Blockade & b, const OrderedTree & j) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        if (j.size() > b.length())
            return out;
        for (auto & pos : subsets(b.length(), j.size()))
            if (copy_on_positions(b, j, pos)) {
                std::vector<int> s;
                for (auto p : pos)
                    s.push_back(b.index(p));
                out.push_back(s);
            }
        return out;
    }

    inline auto all_ordered_trees_up_to(int tau) -> std::vector<OrderedTree>
    {
        std::vector<OrderedTree> out;
        for (int m = 1; m <= tau; ++m)
            for (auto & e : ordered_trees(m))
                out.emplace_back(m, e);
        return out;
    }

    inline auto uniform(const Blockade & b, int tau) -> bool
    {
        for (auto & j : all_ordered_trees_up_to(tau)) {
            auto t = trace(b, j);
            if (! t.empty() && t.size() != subsets(b.length(), j.size()).size())
                return false;
        }
        return true;
    }

    // every contraction with blocks of size >= ceil(kappa w) keeps every trace
    inline auto invariant(const Blockade & b, const Fraction & kappa, int tau) -> bool
    {
        int w = b.width();
        auto c = std::max<std::int64_t>(1, (kappa.num() * w + kappa.den() - 1) / kappa.den());
        auto trees = all_ordered_trees_up_to(tau);
        std::vector<std::vector<std::vector<int>>> base;
        for (auto & j : trees)
            base.push_back(trace(b, j));
        // choices per block: all subsets of size >= c
        std::vector<std::vector<VertexSet>> choices;
        for (int p = 0; p < b.length(); ++p) {
            auto mem = block_members(b, p);
            auto sz = static_cast<int>(mem.size());
            std::vector<VertexSet> opts;
            for (std::uint32_t mask = 1; mask < (1u << sz); ++mask) {
                if (std::popcount(mask) < c)
                    continue;
                VertexSet s(b.host().size());
                for (int i = 0; i < sz; ++i)
                    if (mask >> i & 1)
                        s.set(mem[static_cast<std::size_t>(i)]);
                opts.push_back(s);
            }
            choices.push_back(opts);
        }
        std::vector<std::size_t> pick(choices.size(), 0);
        while (true) {
            std::vector<Block> blocks;
            for (std::size_t p = 0; p < choices.size(); ++p)
                blocks.push_back({b.index(static_cast<int>(p)), choices[p][pick[p]]});
            Blockade sub(b.host_ptr(), blocks);
            for (std::size_t t = 0; t < trees.size(); ++t)
                if (trace(sub, trees[t]) != base[t])
                    return false;
            std::size_t p = 0;
            while (p < pick.size() && ++pick[p] == choices[p].size())
                pick[p++] = 0;
            if (p == pick.size())
                return true;
        }
    }

    // a triple and X with the cover / miss pattern, over all X
    inline auto concave(const Blockade & b, const Fraction & lambda) -> bool
    {
        int w = b.width();
        auto need = (lambda.num() * w + lambda.den() - 1) / lambda.den();
        int k = b.length();
        for (int h1 = 0; h1 < k; ++h1)
            for (int h2 = h1 + 1; h2 < k; ++h2)
                for (int h3 = h2 + 1; h3 < k; ++h3) {
                    std::vector<int> rest;
                    for (int p = 0; p < k; ++p)
                        if (p != h1 && p != h2 && p != h3)
                            for (int v : block_members(b, p))
                                rest.push_back(v);
                    auto sz = static_cast<int>(rest.size());
                    for (std::uint32_t mask = 0; mask < (1u << sz); ++mask) {
                        auto covered = [&](int pos) {
                            int c = 0;
                            for (int v : block_members(b, pos)) {
                                bool hit = false;
                                for (int i = 0; i < sz && ! hit; ++i)
                                    hit = (mask >> i & 1) && b.host().adjacent(v, rest[static_cast<std::size_t>(i)]);
                                c += hit;
                            }
                            return c;
                        };
                        if (covered(h2) >= need && w - covered(h1) >= need && w - covered(h3) >= need)
                            return false;
                    }
                }
        return true;
    }

    inline auto random_blockade(int k, int w, double p, std::uint64_t seed) -> Blockade
    {
        Rng rng(seed);
        int n = k * w;
        auto g = std::make_shared<Graph>(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.bernoulli(p))
                    g->add_edge(u, v);
        std::vector<VertexSet> sets;
        for (int i = 0; i < k; ++i) {
            VertexSet s(n);
            for (int x = 0; x < w; ++x)
                s.set(i * w + x);
            sets.push_back(s);
        }
        return Blockade::from_sets(g, sets);
    }

    // random blockade with uneven blocks (sizes 1..max_w) and a few unused vertices
    inline auto random_ragged_blockade(int k, int max_w, double p, std::uint64_t seed) -> Blockade
    {
        Rng rng(seed);
        std::vector<int> sizes;
        int n = 0;
        for (int i = 0; i < k; ++i) {
            sizes.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_w))));
            n += sizes.back();
        }
        int spare = static_cast<int>(rng.below(3));
        n += spare;
        auto g = std::make_shared<Graph>(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.bernoulli(p))
                    g->add_edge(u, v);
        std::vector<int> order(static_cast<std::size_t>(n));
        std::iota(order.begin(), order.end(), 0);
        rng.shuffle(std::span<int>(order));
        std::vector<VertexSet> sets;
        std::size_t at = 0;
        for (int i = 0; i < k; ++i) {
            VertexSet s(n);
            for (int x = 0; x < sizes[static_cast<std::size_t>(i)]; ++x)
                s.set(order[at++]);
            sets.push_back(s);
        }
        return Blockade::from_sets(g, sets);
    }
}
