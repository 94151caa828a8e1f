#include "oracles.hpp"

#include "purepair/errors.hpp"
#include "purepair/fraction.hpp"
#include "purepair/graph.hpp"
#include "purepair/graph_io.hpp"
#include "purepair/patterns.hpp"
#include "purepair/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace purepair;

namespace
{
    auto complete_graph(int n) -> Graph
    {
        Graph g(n);
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                g.add_edge(u, v);
        return g;
    }
}

TEST_SUITE("graph")
{
    TEST_CASE("fraction arithmetic is exact")
    {
        auto f = Fraction(2, 4);
        CHECK(f.num() == 1);
        CHECK(f.den() == 2);
        CHECK(Fraction::parse("0.05") == Fraction(1, 20));
        CHECK(Fraction::parse("3/9") == Fraction(1, 3));
        CHECK(Fraction(1, 20).ceil_times(20) == 1);
        CHECK(Fraction(1, 20).ceil_times(21) == 2);
        CHECK(Fraction(1, 20).floor_times(39) == 1);
        // ties count as "at least"
        CHECK(Fraction(1, 2).le_ratio(3, 6));
        CHECK(Fraction(1, 2).gt_ratio(2, 6));
        CHECK(Fraction(1, 3) < Fraction(1, 2));
        CHECK((Fraction(1, 2) * Fraction(2, 3)) == Fraction(1, 3));
        CHECK_THROWS(Fraction::parse("x"));
    }

    TEST_CASE("vertex set operations")
    {
        auto a = VertexSet::of(130, {0, 64, 129});
        auto b = VertexSet::of(130, {64, 100});
        CHECK(a.count() == 3);
        CHECK((a & b).members() == std::vector<int>{64});
        CHECK((a | b).count() == 4);
        CHECK((a - b).members() == std::vector<int>{0, 129});
        CHECK((~a).count() == 127);
        CHECK(a.lowest(2).members() == std::vector<int>{0, 64});
        CHECK(a.next(64) == 129);
        CHECK(a.next(129) == -1);
    }

    TEST_CASE("max degree")
    {
        auto r = max_degree(Graph(5));
        CHECK(r.degree == 0);
        CHECK(r.vertex == 0);
        CHECK(max_degree(complete_graph(4)).degree == 3);
        auto p = max_degree(path_graph(4));
        CHECK(p.degree == 2);
        CHECK(p.vertex == 1);
        CHECK_THROWS_AS(max_degree(Graph(0)), std::invalid_argument);
    }

    TEST_CASE("complement")
    {
        CHECK(complement(complete_graph(4)).edge_count() == 0);
        auto c = complement(path_graph(3));
        CHECK(c.edges() == std::vector<Edge>{{0, 2}});
        for (std::uint64_t s = 0; s < 100; ++s) {
            auto g = gnp(12, 0.4, s);
            CHECK(complement(complement(g)) == g);
        }
    }

    TEST_CASE("induced subgraph")
    {
        auto g = gnp(9, 0.5, 3);
        auto all = induced_subgraph(g, VertexSet::full(9));
        CHECK(all.graph == g);
        auto k2 = induced_subgraph(complete_graph(4), VertexSet::of(4, {1, 3}));
        CHECK(k2.graph.edge_count() == 1);
        CHECK(k2.to_host == std::vector<int>{1, 3});
        for (std::uint64_t s = 0; s < 20; ++s) {
            auto h = gnp(10, 0.5, s);
            Rng rng(s);
            VertexSet sub(10);
            for (int v = 0; v < 10; ++v)
                if (rng.bernoulli(0.5))
                    sub.set(v);
            if (sub.empty())
                continue;
            auto ind = induced_subgraph(h, sub);
            std::int64_t count = 0;
            for (int u = 0; u < 10; ++u)
                for (int v = u + 1; v < 10; ++v)
                    count += sub.test(u) && sub.test(v) && h.adjacent(u, v);
            CHECK(ind.graph.edge_count() == count);
        }
        CHECK_THROWS(induced_subgraph(g, VertexSet(9)));
    }

    TEST_CASE("anticomplete sets")
    {
        CHECK(are_anticomplete(Graph(4), VertexSet::of(4, {0}), VertexSet::of(4, {1, 2})));
        CHECK(! are_anticomplete(complete_graph(3), VertexSet::of(3, {0}), VertexSet::of(3, {1})));
        CHECK(are_anticomplete(path_graph(4), VertexSet::of(4, {0}), VertexSet::of(4, {3})));
        CHECK_THROWS(are_anticomplete(path_graph(4), VertexSet::of(4, {0}), VertexSet::of(4, {0, 3})));
        CHECK_THROWS(are_anticomplete(path_graph(4), VertexSet(4), VertexSet::of(4, {3})));
    }

    TEST_CASE("neighbourhood of a set")
    {
        CHECK(neighbourhood_of_set(path_graph(4), VertexSet(4)).empty());
        CHECK(neighbourhood_of_set(star_graph(4), VertexSet::of(5, {0})).members() == std::vector<int>{1, 2, 3, 4});
        auto g = gnp(20, 0.2, 8);
        auto x = VertexSet::of(20, {1, 5, 7});
        auto nb = neighbourhood_of_set(g, x);
        for (int v = 0; v < 20; ++v)
            CHECK(nb.test(v) == (g.adjacent(v, 1) || g.adjacent(v, 5) || g.adjacent(v, 7)));
    }

    TEST_CASE("gnp")
    {
        CHECK(gnp(10, 0.0, 1).edge_count() == 0);
        CHECK(gnp(10, 1.0, 1).edge_count() == 45);
        CHECK(gnp(30, 0.3, 5) == gnp(30, 0.3, 5));
        CHECK(! (gnp(30, 0.3, 5) == gnp(30, 0.3, 6)));
        double pairs = 1000.0 * 999 / 2, mean = pairs * 0.3, sigma = std::sqrt(pairs * 0.3 * 0.7);
        auto e = static_cast<double>(gnp(1000, 0.3, 42).edge_count());
        CHECK(std::abs(e - mean) < 4 * sigma);
        CHECK_THROWS(gnp(3, 1.5, 0));
    }

    TEST_CASE("graph6 and edge list round trip")
    {
        for (int n : {0, 1, 5, 62, 63, 100}) {
            auto g = gnp(n, 0.3, static_cast<std::uint64_t>(n));
            CHECK(from_graph6(to_graph6(g)) == g);
            CHECK(from_edge_list(to_edge_list(g)) == g);
        }
        // P4 from the graph6 reference
        CHECK(from_graph6("Ch") == path_graph(4));
        CHECK_THROWS_AS(from_graph6("C"), ParseError);
        CHECK_THROWS_AS(from_edge_list("n 3\n0 5\n"), ParseError);
    }

    TEST_CASE("rng is reproducible")
    {
        Rng a(7), b(7);
        for (int i = 0; i < 10; ++i)
            CHECK(a.next_u64() == b.next_u64());
        CHECK(derive_seed(1, 0) != derive_seed(1, 1));
        Rng c(3);
        for (int i = 0; i < 1000; ++i)
            CHECK(c.below(7) < 7);
    }

    TEST_CASE("oracle self check on anticomplete value")
    {
        CHECK(oracle::max_anticomplete(complete_graph(6)) == 0);
        CHECK(oracle::max_anticomplete(Graph(8)) == 4);
        CHECK(oracle::max_anticomplete(path_graph(5)) == 2);
    }
}
