#pragma once

#include "purepair/vertex_set.hpp"

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace purepair
{
    using Edge = std::pair<int, int>;

    /**
     * Simple undirected graph on vertices 0..n-1, stored as n dense bit rows.
     *
     * Adjacency is kept symmetric and irreflexive by every mutator; the
     * parsers and constructors re-check this with check_invariants().
     */
    class Graph
    {
    public:
        Graph() = default;
        explicit Graph(int n);

        static auto from_edges(int n, std::span<const Edge> edges) -> Graph;

        auto size() const -> int { return _size; }

        auto add_edge(int u, int v) -> void;
        auto remove_edge(int u, int v) -> void;

        auto adjacent(int u, int v) const -> bool { return _rows[static_cast<std::size_t>(u)].test(v); }
        auto neighbours(int v) const -> const VertexSet & { return _rows[static_cast<std::size_t>(v)]; }
        auto degree(int v) const -> int { return neighbours(v).count(); }

        auto edge_count() const -> std::int64_t;
        /// All edges (u, v) with u < v, in lexicographic order.
        auto edges() const -> std::vector<Edge>;

        /// Throws std::logic_error if adjacency is asymmetric or has a loop.
        auto check_invariants() const -> void;

        auto hash() const -> std::uint64_t;

        friend auto operator==(const Graph & a, const Graph & b) -> bool
        {
            return a._size == b._size && a._rows == b._rows;
        }

    private:
        int _size = 0;
        std::vector<VertexSet> _rows;

        auto check_vertex(int v) const -> void;
    };

    struct DegreeWitness
    {
        int degree;
        int vertex;
    };

    /// Maximum degree and the smallest vertex attaining it.
    auto max_degree(const Graph & g) -> DegreeWitness;
    /// Minimum degree and the smallest vertex attaining it.
    auto min_degree(const Graph & g) -> DegreeWitness;

    auto complement(const Graph & g) -> Graph;

    struct InducedSubgraph
    {
        Graph graph;
        /// to_host[i] is the host vertex relabelled as i.
        std::vector<int> to_host;
    };

    auto induced_subgraph(const Graph & g, const VertexSet & s) -> InducedSubgraph;

    /// No edge between A and B. A and B must be nonempty and disjoint.
    auto are_anticomplete(const Graph & g, const VertexSet & a, const VertexSet & b) -> bool;

    /// Vertices (possibly inside X) with at least one neighbour in X.
    auto neighbourhood_of_set(const Graph & g, const VertexSet & x) -> VertexSet;

    /// Erdős–Rényi G(n, p); identical output for identical (n, p, seed).
    auto gnp(int n, double p, std::uint64_t seed) -> Graph;

    /// Disjoint union, second graph's vertices shifted by a.size().
    auto disjoint_union(const Graph & a, const Graph & b) -> Graph;
}
