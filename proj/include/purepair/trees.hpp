#pragma once

#include "purepair/graph.hpp"

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace purepair
{
    /**
     * A tree with a distinguished root, as a parent array (parent[root] == -1).
     *
     * Vertices are 0..m-1 and children lists are kept in increasing order,
     * so every derived quantity is deterministic.
     */
    class RootedTree
    {
    public:
        /// The one-vertex tree.
        RootedTree();

        static auto from_parents(std::vector<int> parent) -> RootedTree;

        auto size() const -> int { return static_cast<int>(_parent.size()); }
        auto root() const -> int { return _root; }
        auto parent(int v) const -> int { return _parent[static_cast<std::size_t>(v)]; }
        auto children(int v) const -> const std::vector<int> & { return _children[static_cast<std::size_t>(v)]; }
        auto parents() const -> const std::vector<int> & { return _parent; }

        /// Root first, then breadth first with children in increasing order.
        auto bfs_order() const -> std::vector<int>;
        auto depth(int v) const -> int;
        auto height() const -> int;

        /// AHU code: each vertex is "(" + sorted child codes + ")".
        auto canonical_code() const -> std::string;

        auto to_graph() const -> Graph;

    private:
        std::vector<int> _parent;
        std::vector<std::vector<int>> _children;
        int _root = 0;
    };

    /// Isomorphism of rooted trees (root to root).
    auto rooted_isomorphic(const RootedTree & a, const RootedTree & b) -> bool;

    /// New root adjacent to the roots of each subtree, in order.
    auto join_at_new_root(std::span<const RootedTree> subtrees) -> RootedTree;

    /// `base` with each of `extra` hung off its root; the root is unchanged.
    auto hang_from_root(const RootedTree & base, std::span<const RootedTree> extra) -> RootedTree;

    /// T(δ, η): root degree δ, other internal vertices degree δ+1, all leaves at depth η.
    auto build_t(int delta, int eta) -> RootedTree;
    /// Q(γ): new root over γ copies of T(δ, α); 0 <= γ <= δ.
    auto build_q(int gamma, int delta, int alpha) -> RootedTree;
    /// R(γ): Q(γ) for γ <= δ; for γ = δ+i, new root over δ-i copies of T(δ,α) and i of T(δ,β).
    auto build_r(int gamma, int delta, int alpha, int beta) -> RootedTree;
    /// S(γ): γ+1 copies of T(δ, α), the first root adjacent to the others and kept as root.
    auto build_s(int gamma, int delta, int alpha) -> RootedTree;

    /**
     * An embedding of `small` into `big` mapping root to root and edges to
     * edges, injectively; result[v] is the image of v. Exact (recursive
     * bipartite matching of children).
     */
    auto rooted_embedding(const RootedTree & big, const RootedTree & small) -> std::optional<std::vector<int>>;
    auto rooted_contains(const RootedTree & big, const RootedTree & small) -> bool;

    /// Parses the parenthesised form, e.g. "(()())" is a root with two leaves.
    auto parse_rooted_tree(std::string_view text) -> RootedTree;
    auto to_parenthesised(const RootedTree & t) -> std::string;

    /**
     * A forest on labels 0..m-1 whose label order is the vertex order.
     *
     * Two ordered trees are isomorphic exactly when their sorted edge lists
     * agree, so the sorted edge list is the canonical form.
     */
    class OrderedTree
    {
    public:
        OrderedTree() = default;
        /// Throws if an edge is out of range, a loop, repeated, or closes a cycle.
        OrderedTree(int m, std::vector<Edge> edges);

        auto size() const -> int { return _size; }
        auto edges() const -> const std::vector<Edge> & { return _edges; }
        auto is_tree() const -> bool { return static_cast<int>(_edges.size()) == _size - 1; }
        auto adjacent(int u, int v) const -> bool;

        /// "m:u-v,..." with 1-based labels.
        auto code() const -> std::string;
        auto to_graph() const -> Graph;

        friend auto operator==(const OrderedTree & a, const OrderedTree & b) -> bool = default;

    private:
        int _size = 0;
        std::vector<Edge> _edges;
        std::vector<std::uint64_t> _adj;
    };

    /// Parses "m:u-v,u-v,..." (1-based labels); "1:" is the one-vertex tree.
    auto parse_ordered_tree(std::string_view text) -> OrderedTree;

    inline constexpr int default_enumeration_budget = 7;

    /// All ordered trees on m vertices, sorted by code(); m^(m-2) of them for m >= 2.
    auto enumerate_ordered_trees(int m, int budget = default_enumeration_budget) -> std::vector<OrderedTree>;

    /// All ordered trees with 1..tau vertices, by size then code.
    auto ordered_trees_up_to(int tau, int budget = default_enumeration_budget) -> std::vector<OrderedTree>;

    /// The ordered tree obtained from a tree graph by listing vertices in the given order.
    auto order_tree(const Graph & tree, std::span<const int> order) -> OrderedTree;

    /// Every distinct ordering of a tree graph, sorted by code().
    auto all_orderings(const Graph & tree) -> std::vector<OrderedTree>;

    /// The tree graph rooted at `root`; vertex numbers are kept.
    auto root_tree(const Graph & tree, int root) -> RootedTree;

    auto is_forest(const Graph & g) -> bool;
    auto is_tree(const Graph & g) -> bool;
}
