#include "purepair/errors.hpp"
#include "purepair/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>
#include <set>

namespace purepair
{
    namespace
    {
        struct LeafSearch
        {
            const Blockade & b;
            const LeafQuery & q;
            int need;
            const LeafFamily & family;

            // X covers the attach block and misses the others; returns the extension if J then embeds.
            auto try_x(const std::vector<int> & positions, const VertexSet & x) const -> std::optional<LeafExtension>
            {
                if (x.empty())
                    return std::nullopt;
                const Graph & g = b.host();
                auto nx = neighbourhood_of_set(g, x);
                std::vector<VertexSet> cut;
                for (std::size_t h = 0; h < positions.size(); ++h) {
                    auto & blk = b.block(positions[h]);
                    if (static_cast<int>(h) == q.attach)
                        cut.push_back(blk & nx);
                    else
                        cut.push_back(blk - nx);
                    if (cut.back().count() < need)
                        return std::nullopt;
                }
                auto copy = find_rainbow_in_blocks(g, q.j, cut);
                if (! copy)
                    return std::nullopt;
                int u = (*copy)[static_cast<std::size_t>(q.attach)];
                int leaf = (x & g.neighbours(u)).first();
                int t = q.j.size();
                Graph pattern(t + 1);
                for (auto [a, c] : q.j.edges())
                    pattern.add_edge(a, c);
                pattern.add_edge(q.attach, t);
                RainbowEmbedding e{q.j.code() + "+leaf@" + std::to_string(q.attach + 1), *copy, {}};
                e.vertex.push_back(leaf);
                for (int p : positions)
                    e.block_index.push_back(b.index(p));
                e.block_index.push_back(b.index(b.position_of_vertex(leaf)));
                return LeafExtension{std::move(e), std::move(pattern), positions, x};
            }

            auto run(const std::vector<int> & positions, std::uint64_t budget) const -> std::optional<LeafExtension>
            {
                const Graph & g = b.host();
                int n = g.size();
                std::uint64_t used = 0;
                auto attempt = [&](const VertexSet & x) -> std::optional<LeafExtension> {
                    if (used >= budget)
                        return std::nullopt;
                    ++used;
                    return try_x(positions, x);
                };

                std::vector<char> chosen(static_cast<std::size_t>(b.length()), 0);
                for (int p : positions)
                    chosen[static_cast<std::size_t>(p)] = 1;
                VertexSet rest = b.vertices();
                VertexSet others(n);
                for (std::size_t h = 0; h < positions.size(); ++h) {
                    rest -= b.block(positions[h]);
                    if (static_cast<int>(h) != q.attach)
                        others |= b.block(positions[h]);
                }
                auto & target = b.block(positions[static_cast<std::size_t>(q.attach)]);

                // vertices that see none of the blocks to be missed
                VertexSet free(n);
                rest.for_each([&](int v) {
                    if (! g.neighbours(v).intersects(others))
                        free.set(v);
                });
                if (auto e = attempt(free))
                    return e;

                std::vector<int> open;
                for (int p = 0; p < b.length(); ++p)
                    if (! chosen[static_cast<std::size_t>(p)])
                        open.push_back(p);
                if (family.single_blocks)
                    for (int p : open)
                        if (auto e = attempt(b.block(p)))
                            return e;
                if (family.block_pairs)
                    for (std::size_t i = 0; i < open.size(); ++i)
                        for (std::size_t j = i + 1; j < open.size(); ++j)
                            if (auto e = attempt(b.block(open[i]) | b.block(open[j])))
                                return e;
                if (family.slices) {
                    std::optional<LeafExtension> hit;
                    target.for_each([&](int u) {
                        if (hit)
                            return;
                        auto slice = g.neighbours(u) & rest;
                        hit = attempt(slice);
                        if (! hit)
                            hit = attempt(slice & free);
                    });
                    if (hit)
                        return hit;
                }
                int size = rest.count();
                if (size < 63 && (std::uint64_t{1} << size) <= family.exhaustive_limit) {
                    auto members = rest.members();
                    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << size); ++mask) {
                        VertexSet x(n);
                        for (int i = 0; i < size; ++i)
                            if (mask >> i & 1)
                                x.set(members[static_cast<std::size_t>(i)]);
                        if (auto e = attempt(x))
                            return e;
                    }
                }
                return std::nullopt;
            }
        };
    }

    auto find_leaf_extension(const Blockade & b, const LeafQuery & q, const Fraction & kappa, const LeafFamily & family, Execution exec)
        -> std::optional<LeafExtension>
    {
        int t = q.j.size();
        if (q.attach < 0 || q.attach >= t)
            throw std::invalid_argument("find_leaf_extension: attach label out of range");
        if (t + 1 > b.length())
            return std::nullopt;
        int need = static_cast<int>(std::max<std::int64_t>(1, kappa.ceil_times(b.width())));
        std::vector<int> all(static_cast<std::size_t>(b.length()));
        std::iota(all.begin(), all.end(), 0);
        auto subsets = combinations(all, t);
        auto count = static_cast<long>(subsets.size());
        std::uint64_t per = std::max<std::uint64_t>(1, family.budget / subsets.size());
        LeafSearch search{b, q, need, family};

        std::vector<std::optional<LeafExtension>> found(subsets.size());
        std::atomic<long> best{count};
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::parallel)
        for (long i = 0; i < count; ++i) {
            if (i > best.load(std::memory_order_relaxed))
                continue;
            auto ui = static_cast<std::size_t>(i);
            found[ui] = search.run(subsets[ui], per);
            if (found[ui]) {
                long cur = best.load();
                while (i < cur && ! best.compare_exchange_weak(cur, i)) { }
            }
        }
        if (best.load() < count)
            return found[static_cast<std::size_t>(best.load())];
        return std::nullopt;
    }

    auto choose_leaf(const Graph & tree) -> std::pair<int, int>
    {
        if (tree.size() < 2 || ! is_tree(tree))
            throw std::invalid_argument("choose_leaf: need a tree with at least two vertices");
        for (int v = tree.size() - 1; v >= 0; --v)
            if (tree.degree(v) == 1)
                return {v, tree.neighbours(v).first()};
        throw std::logic_error("choose_leaf: tree without leaves");
    }

    auto build_concave(const Blockade & b, const Graph & tree, const Fraction & kappa, const Fraction & lambda, int r, const LeafFamily & family,
        const VerifyOptions & concave_opts, TraceMemo * memo) -> ConcaveOutcome
    {
        TraceMemo local;
        if (! memo)
            memo = &local;
        ConcaveOutcome out;
        auto [leaf, anchor] = choose_leaf(tree);
        VertexSet keep(tree.size());
        for (int v = 0; v < tree.size(); ++v)
            if (v != leaf)
                keep.set(v);
        auto rest = induced_subgraph(tree, keep);

        std::vector<int> order(static_cast<std::size_t>(rest.graph.size()));
        std::iota(order.begin(), order.end(), 0);
        std::set<std::pair<std::string, int>> seen;
        do {
            auto j = order_tree(rest.graph, order);
            int attach = -1;
            for (std::size_t i = 0; i < order.size(); ++i)
                if (rest.to_host[static_cast<std::size_t>(order[i])] == anchor)
                    attach = static_cast<int>(i);
            if (! seen.emplace(j.code(), attach).second)
                continue;
            if (memo->get(b, j, concave_opts.execution).empty())
                continue;
            ++out.orderings_tried;
            auto ext = find_leaf_extension(b, {j, attach}, kappa, family, concave_opts.execution);
            if (! ext)
                continue;
            // relabel from J order (+ leaf) to tree vertices
            out.tree_to_label.assign(static_cast<std::size_t>(tree.size()), -1);
            for (std::size_t i = 0; i < order.size(); ++i)
                out.tree_to_label[static_cast<std::size_t>(rest.to_host[static_cast<std::size_t>(order[i])])] = static_cast<int>(i);
            out.tree_to_label[static_cast<std::size_t>(leaf)] = j.size();
            RainbowEmbedding e{"tree", {}, {}};
            for (int v = 0; v < tree.size(); ++v) {
                auto l = static_cast<std::size_t>(out.tree_to_label[static_cast<std::size_t>(v)]);
                e.vertex.push_back(ext->embedding.vertex[l]);
                e.block_index.push_back(ext->embedding.block_index[l]);
            }
            out.copy = std::move(e);
            return out;
        } while (std::next_permutation(order.begin(), order.end()));

        if (r < 1 || b.length() % r != 0)
            throw std::invalid_argument("build_concave: length " + std::to_string(b.length()) + " is not a multiple of r = " + std::to_string(r));
        out.grouped = interval_group(b, r);
        out.concavity = is_concave(*out.grouped, lambda, concave_opts);
        return out;
    }
}
