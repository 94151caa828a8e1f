#include "purepair/patterns.hpp"
#include "purepair/errors.hpp"
#include "purepair/trees.hpp"

#include <charconv>
#include <string>
#include <vector>

namespace purepair
{
    auto path_graph(int n) -> Graph
    {
        if (n < 1)
            throw std::invalid_argument("path_graph: n must be positive");
        Graph g(n);
        for (int v = 0; v + 1 < n; ++v)
            g.add_edge(v, v + 1);
        return g;
    }

    auto star_graph(int leaves) -> Graph
    {
        if (leaves < 0)
            throw std::invalid_argument("star_graph: negative leaf count");
        Graph g(leaves + 1);
        for (int v = 1; v <= leaves; ++v)
            g.add_edge(0, v);
        return g;
    }

    auto spider_graph(std::span<const int> legs) -> Graph
    {
        int n = 1;
        for (int l : legs) {
            if (l < 1)
                throw std::invalid_argument("spider_graph: legs must have length at least 1");
            n += l;
        }
        Graph g(n);
        int next = 1;
        for (int l : legs) {
            int prev = 0;
            for (int i = 0; i < l; ++i, ++next) {
                g.add_edge(prev, next);
                prev = next;
            }
        }
        return g;
    }

    namespace
    {
        auto to_int(std::string_view s, std::string_view whole) -> int
        {
            int v = 0;
            auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc() || ptr != s.data() + s.size())
                throw ParseError("pattern '" + std::string(whole) + "': bad number '" + std::string(s) + "'");
            return v;
        }

        auto int_list(std::string_view s, std::string_view whole) -> std::vector<int>
        {
            std::vector<int> out;
            while (true) {
                auto comma = s.find(',');
                out.push_back(to_int(s.substr(0, comma), whole));
                if (comma == std::string_view::npos)
                    return out;
                s.remove_prefix(comma + 1);
            }
        }
    }

    auto parse_pattern(std::string_view text) -> Graph
    {
        if (text.empty())
            throw ParseError("empty pattern");
        if (text == "K1")
            return Graph(1);
        if (text == "K2" || text == "edge")
            return path_graph(2);
        if (text.front() == '(')
            return parse_rooted_tree(text).to_graph();
        if (text.starts_with("K1,"))
            return star_graph(to_int(text.substr(3), text));
        if (text.starts_with("star"))
            return star_graph(to_int(text.substr(4), text));
        if (text == "spider") {
            int legs[] = {2, 2, 2};
            return spider_graph(legs);
        }
        if (text.starts_with("spider:"))
            return spider_graph(int_list(text.substr(7), text));
        if (text.starts_with("T:")) {
            auto v = int_list(text.substr(2), text);
            if (v.size() != 2)
                throw ParseError("pattern '" + std::string(text) + "': expected T:delta,eta");
            return build_t(v[0], v[1]).to_graph();
        }
        if (text.front() == 'P')
            return path_graph(to_int(text.substr(1), text));
        if (text.find(':') != std::string_view::npos)
            return parse_ordered_tree(text).to_graph();
        throw ParseError("unknown pattern '" + std::string(text) + "'");
    }
}
