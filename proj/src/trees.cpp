#include "purepair/trees.hpp"
#include "purepair/errors.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace purepair
{
    RootedTree::RootedTree() :
        _parent{-1},
        _children(1),
        _root(0)
    {
    }

    auto RootedTree::from_parents(std::vector<int> parent) -> RootedTree
    {
        RootedTree t;
        int m = static_cast<int>(parent.size());
        if (m == 0)
            throw std::invalid_argument("RootedTree: empty");
        t._parent = std::move(parent);
        t._children.assign(static_cast<std::size_t>(m), {});
        t._root = -1;
        for (int v = 0; v < m; ++v) {
            int p = t._parent[static_cast<std::size_t>(v)];
            if (p == -1) {
                if (t._root != -1)
                    throw std::invalid_argument("RootedTree: more than one root");
                t._root = v;
            }
            else if (p < 0 || p >= m || p == v)
                throw std::invalid_argument("RootedTree: bad parent pointer");
            else
                t._children[static_cast<std::size_t>(p)].push_back(v);
        }
        if (t._root == -1)
            throw std::invalid_argument("RootedTree: no root");
        // parent pointers must terminate at the root
        if (static_cast<int>(t.bfs_order().size()) != m)
            throw std::invalid_argument("RootedTree: parent pointers contain a cycle");
        return t;
    }

    auto RootedTree::bfs_order() const -> std::vector<int>
    {
        std::vector<int> order{_root};
        for (std::size_t i = 0; i < order.size(); ++i)
            for (int c : children(order[i]))
                order.push_back(c);
        return order;
    }

    auto RootedTree::depth(int v) const -> int
    {
        int d = 0;
        while (parent(v) != -1) {
            v = parent(v);
            ++d;
        }
        return d;
    }

    auto RootedTree::height() const -> int
    {
        int h = 0;
        for (int v = 0; v < size(); ++v)
            h = std::max(h, depth(v));
        return h;
    }

    auto RootedTree::canonical_code() const -> std::string
    {
        std::vector<std::string> code(static_cast<std::size_t>(size()));
        auto order = bfs_order();
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            std::vector<std::string> parts;
            for (int c : children(*it))
                parts.push_back(std::move(code[static_cast<std::size_t>(c)]));
            std::sort(parts.begin(), parts.end());
            std::string s = "(";
            for (auto & p : parts)
                s += p;
            s += ")";
            code[static_cast<std::size_t>(*it)] = std::move(s);
        }
        return code[static_cast<std::size_t>(_root)];
    }

    auto RootedTree::to_graph() const -> Graph
    {
        Graph g(size());
        for (int v = 0; v < size(); ++v)
            if (parent(v) != -1)
                g.add_edge(v, parent(v));
        return g;
    }

    auto rooted_isomorphic(const RootedTree & a, const RootedTree & b) -> bool
    {
        return a.size() == b.size() && a.canonical_code() == b.canonical_code();
    }

    auto join_at_new_root(std::span<const RootedTree> subtrees) -> RootedTree
    {
        std::vector<int> parent{-1};
        for (auto & s : subtrees) {
            int offset = static_cast<int>(parent.size());
            for (int v = 0; v < s.size(); ++v)
                parent.push_back(s.parent(v) == -1 ? 0 : s.parent(v) + offset);
        }
        return RootedTree::from_parents(std::move(parent));
    }

    auto hang_from_root(const RootedTree & base, std::span<const RootedTree> extra) -> RootedTree
    {
        std::vector<int> parent = base.parents();
        for (auto & s : extra) {
            int offset = static_cast<int>(parent.size());
            for (int v = 0; v < s.size(); ++v)
                parent.push_back(s.parent(v) == -1 ? base.root() : s.parent(v) + offset);
        }
        return RootedTree::from_parents(std::move(parent));
    }

    auto build_t(int delta, int eta) -> RootedTree
    {
        if (delta < 2)
            throw std::invalid_argument("build_t: delta must be at least 2");
        if (eta < 0)
            throw std::invalid_argument("build_t: eta must be non-negative");
        RootedTree t;
        for (int level = 1; level <= eta; ++level) {
            std::vector<RootedTree> copies(static_cast<std::size_t>(delta), t);
            t = join_at_new_root(copies);
        }
        return t;
    }

    auto build_q(int gamma, int delta, int alpha) -> RootedTree
    {
        if (gamma < 0 || gamma > delta)
            throw std::invalid_argument("build_q: gamma outside 0..delta");
        std::vector<RootedTree> copies(static_cast<std::size_t>(gamma), build_t(delta, alpha));
        return join_at_new_root(copies);
    }

    auto build_r(int gamma, int delta, int alpha, int beta) -> RootedTree
    {
        if (gamma < 0 || gamma > 2 * delta)
            throw std::invalid_argument("build_r: gamma outside 0..2*delta");
        if (alpha > beta)
            throw std::invalid_argument("build_r: alpha exceeds beta");
        if (gamma <= delta)
            return build_q(gamma, delta, alpha);
        int i = gamma - delta;
        std::vector<RootedTree> copies(static_cast<std::size_t>(delta - i), build_t(delta, alpha));
        auto tb = build_t(delta, beta);
        for (int c = 0; c < i; ++c)
            copies.push_back(tb);
        return join_at_new_root(copies);
    }

    auto build_s(int gamma, int delta, int alpha) -> RootedTree
    {
        if (gamma < 0 || gamma > delta)
            throw std::invalid_argument("build_s: gamma outside 0..delta");
        auto ta = build_t(delta, alpha);
        std::vector<RootedTree> extra(static_cast<std::size_t>(gamma), ta);
        return hang_from_root(ta, extra);
    }

    namespace
    {
        struct EmbeddingSearch
        {
            const RootedTree & big;
            const RootedTree & small;
            std::vector<std::vector<signed char>> memo;

            EmbeddingSearch(const RootedTree & b, const RootedTree & s) :
                big(b),
                small(s),
                memo(static_cast<std::size_t>(s.size()), std::vector<signed char>(static_cast<std::size_t>(b.size()), -1))
            {
            }

            // Kuhn matching of small-children(u) into big-children(x); match[i] is the big child for the i-th small child.
            auto match_children(int u, int x, std::vector<int> * match) -> bool
            {
                auto & su = small.children(u);
                auto & bx = big.children(x);
                if (su.size() > bx.size())
                    return false;
                std::vector<int> owner(bx.size(), -1);
                std::vector<int> assigned(su.size(), -1);
                std::function<bool(std::size_t, std::vector<char> &)> augment = [&](std::size_t i, std::vector<char> & seen) -> bool {
                    for (std::size_t j = 0; j < bx.size(); ++j) {
                        if (seen[j] || ! can(su[i], bx[j]))
                            continue;
                        seen[j] = 1;
                        if (owner[j] == -1 || augment(static_cast<std::size_t>(owner[j]), seen)) {
                            owner[j] = static_cast<int>(i);
                            assigned[i] = static_cast<int>(j);
                            return true;
                        }
                    }
                    return false;
                };
                for (std::size_t i = 0; i < su.size(); ++i) {
                    std::vector<char> seen(bx.size(), 0);
                    if (! augment(i, seen))
                        return false;
                }
                if (match) {
                    match->clear();
                    for (auto j : assigned)
                        match->push_back(bx[static_cast<std::size_t>(j)]);
                }
                return true;
            }

            auto can(int u, int x) -> bool
            {
                auto & m = memo[static_cast<std::size_t>(u)][static_cast<std::size_t>(x)];
                if (m == -1)
                    m = match_children(u, x, nullptr) ? 1 : 0;
                return m == 1;
            }
        };
    }

    auto rooted_embedding(const RootedTree & big, const RootedTree & small) -> std::optional<std::vector<int>>
    {
        EmbeddingSearch search(big, small);
        if (! search.can(small.root(), big.root()))
            return std::nullopt;
        std::vector<int> image(static_cast<std::size_t>(small.size()), -1);
        image[static_cast<std::size_t>(small.root())] = big.root();
        for (int u : small.bfs_order()) {
            std::vector<int> match;
            search.match_children(u, image[static_cast<std::size_t>(u)], &match);
            auto & su = small.children(u);
            for (std::size_t i = 0; i < su.size(); ++i)
                image[static_cast<std::size_t>(su[i])] = match[i];
        }
        return image;
    }

    auto rooted_contains(const RootedTree & big, const RootedTree & small) -> bool
    {
        return rooted_embedding(big, small).has_value();
    }

    auto parse_rooted_tree(std::string_view text) -> RootedTree
    {
        std::vector<int> parent;
        std::vector<int> stack;
        bool closed = false;
        for (char c : text) {
            if (c == ' ' || c == '\n' || c == '\t')
                continue;
            if (closed)
                throw ParseError("rooted tree: trailing text after root in '" + std::string(text) + "'");
            if (c == '(') {
                parent.push_back(stack.empty() ? -1 : stack.back());
                stack.push_back(static_cast<int>(parent.size()) - 1);
            }
            else if (c == ')') {
                if (stack.empty())
                    throw ParseError("rooted tree: unbalanced ')'");
                stack.pop_back();
                closed = stack.empty();
            }
            else
                throw ParseError("rooted tree: unexpected character in '" + std::string(text) + "'");
        }
        if (! closed)
            throw ParseError("rooted tree: unbalanced '(' in '" + std::string(text) + "'");
        return RootedTree::from_parents(std::move(parent));
    }

    auto to_parenthesised(const RootedTree & t) -> std::string
    {
        std::function<void(int, std::string &)> emit = [&](int v, std::string & out) {
            out += '(';
            for (int c : t.children(v))
                emit(c, out);
            out += ')';
        };
        std::string out;
        emit(t.root(), out);
        return out;
    }

    OrderedTree::OrderedTree(int m, std::vector<Edge> edges) :
        _size(m),
        _adj(static_cast<std::size_t>(std::max(m, 0)), 0)
    {
        if (m < 1 || m > 64)
            throw std::invalid_argument("OrderedTree: size must be in 1..64");
        std::vector<int> uf(static_cast<std::size_t>(m));
        std::iota(uf.begin(), uf.end(), 0);
        std::function<int(int)> find = [&](int x) { return uf[static_cast<std::size_t>(x)] == x ? x : uf[static_cast<std::size_t>(x)] = find(uf[static_cast<std::size_t>(x)]); };
        for (auto & [u, v] : edges) {
            if (u > v)
                std::swap(u, v);
            if (u < 0 || v >= m || u == v)
                throw std::invalid_argument("OrderedTree: bad edge");
            if (_adj[static_cast<std::size_t>(u)] >> v & 1)
                throw std::invalid_argument("OrderedTree: repeated edge");
            int a = find(u), b = find(v);
            if (a == b)
                throw std::invalid_argument("OrderedTree: edges contain a cycle");
            uf[static_cast<std::size_t>(a)] = b;
            _adj[static_cast<std::size_t>(u)] |= std::uint64_t{1} << v;
            _adj[static_cast<std::size_t>(v)] |= std::uint64_t{1} << u;
        }
        std::sort(edges.begin(), edges.end());
        _edges = std::move(edges);
    }

    auto OrderedTree::adjacent(int u, int v) const -> bool
    {
        return (_adj[static_cast<std::size_t>(u)] >> v) & 1;
    }

    auto OrderedTree::code() const -> std::string
    {
        std::string s = std::to_string(_size) + ":";
        for (std::size_t i = 0; i < _edges.size(); ++i) {
            if (i)
                s += ",";
            s += std::to_string(_edges[i].first + 1) + "-" + std::to_string(_edges[i].second + 1);
        }
        return s;
    }

    auto OrderedTree::to_graph() const -> Graph
    {
        return Graph::from_edges(_size, _edges);
    }

    auto parse_ordered_tree(std::string_view text) -> OrderedTree
    {
        auto colon = text.find(':');
        if (colon == std::string_view::npos)
            throw ParseError("ordered tree: expected 'm:u-v,...' in '" + std::string(text) + "'");
        auto number = [&](std::string_view s) {
            if (s.empty())
                throw ParseError("ordered tree: empty number in '" + std::string(text) + "'");
            int v = 0;
            for (char c : s) {
                if (c < '0' || c > '9')
                    throw ParseError("ordered tree: bad number in '" + std::string(text) + "'");
                v = v * 10 + (c - '0');
            }
            return v;
        };
        int m = number(text.substr(0, colon));
        std::vector<Edge> edges;
        auto rest = text.substr(colon + 1);
        while (! rest.empty()) {
            auto comma = rest.find(',');
            auto item = rest.substr(0, comma);
            auto dash = item.find('-');
            if (dash == std::string_view::npos)
                throw ParseError("ordered tree: expected 'u-v' in '" + std::string(text) + "'");
            edges.emplace_back(number(item.substr(0, dash)) - 1, number(item.substr(dash + 1)) - 1);
            rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        }
        try {
            return OrderedTree(m, std::move(edges));
        }
        catch (const std::invalid_argument & e) {
            throw ParseError(std::string("ordered tree: ") + e.what());
        }
    }

    auto enumerate_ordered_trees(int m, int budget) -> std::vector<OrderedTree>
    {
        if (m < 1)
            throw std::invalid_argument("enumerate_ordered_trees: m must be positive");
        if (m > budget)
            throw BudgetExceeded("ordered tree enumeration with m=" + std::to_string(m) + " above budget " + std::to_string(budget));
        if (m == 1)
            return {OrderedTree(1, {})};

        // Prüfer decoding of every sequence in [0,m)^(m-2).
        std::vector<OrderedTree> out;
        std::vector<int> seq(static_cast<std::size_t>(m - 2), 0);
        while (true) {
            std::vector<int> degree(static_cast<std::size_t>(m), 1);
            for (int x : seq)
                ++degree[static_cast<std::size_t>(x)];
            std::vector<Edge> edges;
            for (int x : seq) {
                int leaf = 0;
                while (degree[static_cast<std::size_t>(leaf)] != 1)
                    ++leaf;
                edges.emplace_back(leaf, x);
                --degree[static_cast<std::size_t>(leaf)];
                --degree[static_cast<std::size_t>(x)];
            }
            int a = -1;
            for (int v = 0; v < m; ++v)
                if (degree[static_cast<std::size_t>(v)] == 1) {
                    if (a == -1)
                        a = v;
                    else
                        edges.emplace_back(a, v);
                }
            out.emplace_back(m, std::move(edges));

            int pos = m - 3;
            while (pos >= 0 && seq[static_cast<std::size_t>(pos)] == m - 1)
                seq[static_cast<std::size_t>(pos--)] = 0;
            if (pos < 0)
                break;
            ++seq[static_cast<std::size_t>(pos)];
        }

        std::sort(out.begin(), out.end(), [](const OrderedTree & a, const OrderedTree & b) { return a.code() < b.code(); });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    auto ordered_trees_up_to(int tau, int budget) -> std::vector<OrderedTree>
    {
        std::vector<OrderedTree> out;
        for (int m = 1; m <= tau; ++m) {
            auto trees = enumerate_ordered_trees(m, budget);
            out.insert(out.end(), trees.begin(), trees.end());
        }
        return out;
    }

    auto order_tree(const Graph & tree, std::span<const int> order) -> OrderedTree
    {
        std::vector<int> label(static_cast<std::size_t>(tree.size()), -1);
        for (std::size_t i = 0; i < order.size(); ++i)
            label[static_cast<std::size_t>(order[i])] = static_cast<int>(i);
        std::vector<Edge> edges;
        for (auto [u, v] : tree.edges())
            edges.emplace_back(label[static_cast<std::size_t>(u)], label[static_cast<std::size_t>(v)]);
        return OrderedTree(tree.size(), std::move(edges));
    }

    auto all_orderings(const Graph & tree) -> std::vector<OrderedTree>
    {
        std::vector<int> perm(static_cast<std::size_t>(tree.size()));
        std::iota(perm.begin(), perm.end(), 0);
        std::set<std::string> seen;
        std::vector<OrderedTree> out;
        do {
            auto t = order_tree(tree, perm);
            if (seen.insert(t.code()).second)
                out.push_back(std::move(t));
        } while (std::next_permutation(perm.begin(), perm.end()));
        std::sort(out.begin(), out.end(), [](const OrderedTree & a, const OrderedTree & b) { return a.code() < b.code(); });
        return out;
    }

    auto is_forest(const Graph & g) -> bool
    {
        std::vector<int> uf(static_cast<std::size_t>(g.size()));
        std::iota(uf.begin(), uf.end(), 0);
        std::function<int(int)> find = [&](int x) { return uf[static_cast<std::size_t>(x)] == x ? x : uf[static_cast<std::size_t>(x)] = find(uf[static_cast<std::size_t>(x)]); };
        for (auto [u, v] : g.edges()) {
            int a = find(u), b = find(v);
            if (a == b)
                return false;
            uf[static_cast<std::size_t>(a)] = b;
        }
        return true;
    }

    auto is_tree(const Graph & g) -> bool
    {
        return g.size() >= 1 && is_forest(g) && g.edge_count() == g.size() - 1;
    }
}

namespace purepair
{
    auto root_tree(const Graph & tree, int root) -> RootedTree
    {
        if (! is_tree(tree))
            throw std::invalid_argument("root_tree: not a tree");
        std::vector<int> parent(static_cast<std::size_t>(tree.size()), -2);
        parent[static_cast<std::size_t>(root)] = -1;
        std::vector<int> queue{root};
        for (std::size_t i = 0; i < queue.size(); ++i) {
            int u = queue[i];
            tree.neighbours(u).for_each([&](int v) {
                if (parent[static_cast<std::size_t>(v)] == -2) {
                    parent[static_cast<std::size_t>(v)] = u;
                    queue.push_back(v);
                }
            });
        }
        return RootedTree::from_parents(std::move(parent));
    }
}
