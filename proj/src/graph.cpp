#include "purepair/graph.hpp"
#include "purepair/rng.hpp"

#include <stdexcept>
#include <string>

namespace purepair
{
    Graph::Graph(int n) :
        _size(n)
    {
        if (n < 0)
            throw std::invalid_argument("Graph: negative vertex count");
        _rows.assign(static_cast<std::size_t>(n), VertexSet(n));
    }

    auto Graph::from_edges(int n, std::span<const Edge> edges) -> Graph
    {
        Graph g(n);
        for (auto [u, v] : edges)
            g.add_edge(u, v);
        return g;
    }

    auto Graph::check_vertex(int v) const -> void
    {
        if (v < 0 || v >= _size)
            throw std::out_of_range("Graph: vertex " + std::to_string(v) + " out of range for n=" + std::to_string(_size));
    }

    auto Graph::add_edge(int u, int v) -> void
    {
        check_vertex(u);
        check_vertex(v);
        if (u == v)
            throw std::invalid_argument("Graph: self-loop at " + std::to_string(u));
        _rows[static_cast<std::size_t>(u)].set(v);
        _rows[static_cast<std::size_t>(v)].set(u);
    }

    auto Graph::remove_edge(int u, int v) -> void
    {
        check_vertex(u);
        check_vertex(v);
        _rows[static_cast<std::size_t>(u)].reset(v);
        _rows[static_cast<std::size_t>(v)].reset(u);
    }

    auto Graph::edge_count() const -> std::int64_t
    {
        std::int64_t twice = 0;
        for (auto & r : _rows)
            twice += r.count();
        return twice / 2;
    }

    auto Graph::edges() const -> std::vector<Edge>
    {
        std::vector<Edge> out;
        for (int u = 0; u < _size; ++u)
            for (int v = neighbours(u).next(u); v != -1; v = neighbours(u).next(v))
                out.emplace_back(u, v);
        return out;
    }

    auto Graph::check_invariants() const -> void
    {
        if (static_cast<int>(_rows.size()) != _size)
            throw std::logic_error("Graph: row count mismatch");
        for (int u = 0; u < _size; ++u) {
            auto & row = _rows[static_cast<std::size_t>(u)];
            if (row.host_size() != _size)
                throw std::logic_error("Graph: row width mismatch");
            if (row.test(u))
                throw std::logic_error("Graph: self-loop at " + std::to_string(u));
            row.for_each([&](int v) {
                if (! adjacent(v, u))
                    throw std::logic_error("Graph: asymmetric adjacency " + std::to_string(u) + "-" + std::to_string(v));
            });
        }
    }

    auto Graph::hash() const -> std::uint64_t
    {
        std::uint64_t h = mix_seed(static_cast<std::uint64_t>(_size));
        for (auto & r : _rows)
            h = mix_seed(h ^ r.hash());
        return h;
    }

    auto max_degree(const Graph & g) -> DegreeWitness
    {
        if (g.size() == 0)
            throw std::invalid_argument("max_degree: empty graph");
        DegreeWitness best{g.degree(0), 0};
        for (int v = 1; v < g.size(); ++v)
            if (auto d = g.degree(v); d > best.degree)
                best = {d, v};
        return best;
    }

    auto min_degree(const Graph & g) -> DegreeWitness
    {
        if (g.size() == 0)
            throw std::invalid_argument("min_degree: empty graph");
        DegreeWitness best{g.degree(0), 0};
        for (int v = 1; v < g.size(); ++v)
            if (auto d = g.degree(v); d < best.degree)
                best = {d, v};
        return best;
    }

    auto complement(const Graph & g) -> Graph
    {
        Graph out(g.size());
        for (int u = 0; u < g.size(); ++u)
            for (int v = u + 1; v < g.size(); ++v)
                if (! g.adjacent(u, v))
                    out.add_edge(u, v);
        return out;
    }

    auto induced_subgraph(const Graph & g, const VertexSet & s) -> InducedSubgraph
    {
        if (s.empty())
            throw std::invalid_argument("induced_subgraph: empty vertex set");
        if (s.host_size() != g.size())
            throw std::invalid_argument("induced_subgraph: vertex set from a different host");
        InducedSubgraph out{Graph(s.count()), s.members()};
        int m = out.graph.size();
        for (int i = 0; i < m; ++i)
            for (int j = i + 1; j < m; ++j)
                if (g.adjacent(out.to_host[static_cast<std::size_t>(i)], out.to_host[static_cast<std::size_t>(j)]))
                    out.graph.add_edge(i, j);
        return out;
    }

    auto neighbourhood_of_set(const Graph & g, const VertexSet & x) -> VertexSet
    {
        VertexSet out(g.size());
        x.for_each([&](int v) { out |= g.neighbours(v); });
        return out;
    }

    auto are_anticomplete(const Graph & g, const VertexSet & a, const VertexSet & b) -> bool
    {
        if (a.empty() || b.empty())
            throw std::invalid_argument("are_anticomplete: empty side");
        if (a.intersects(b))
            throw std::invalid_argument("are_anticomplete: sides overlap");
        return ! neighbourhood_of_set(g, a).intersects(b);
    }

    auto gnp(int n, double p, std::uint64_t seed) -> Graph
    {
        if (! (p >= 0.0 && p <= 1.0))
            throw std::invalid_argument("gnp: p outside [0, 1]");
        Graph g(n);
        Rng rng(seed);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.bernoulli(p))
                    g.add_edge(u, v);
        return g;
    }

    auto disjoint_union(const Graph & a, const Graph & b) -> Graph
    {
        Graph out(a.size() + b.size());
        for (auto [u, v] : a.edges())
            out.add_edge(u, v);
        for (auto [u, v] : b.edges())
            out.add_edge(u + a.size(), v + a.size());
        return out;
    }
}
