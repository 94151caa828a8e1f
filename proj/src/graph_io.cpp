#include "purepair/graph_io.hpp"
#include "purepair/errors.hpp"

#include <charconv>
#include <optional>
#include <sstream>

namespace purepair
{
    namespace
    {
        auto encode_size(std::int64_t n, std::string & out) -> void
        {
            if (n <= 62) {
                out.push_back(static_cast<char>(n + 63));
            }
            else if (n <= 258047) {
                out.push_back(126);
                for (int shift = 12; shift >= 0; shift -= 6)
                    out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
            }
            else {
                out.push_back(126);
                out.push_back(126);
                for (int shift = 30; shift >= 0; shift -= 6)
                    out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
            }
        }

        auto trim(std::string_view s) -> std::string_view
        {
            while (! s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
                s.remove_prefix(1);
            while (! s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '\n'))
                s.remove_suffix(1);
            return s;
        }

        auto parse_int(std::string_view s, std::string_view context) -> int
        {
            int v = 0;
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size())
                throw ParseError("expected integer in '" + std::string(context) + "'");
            return v;
        }
    }

    auto to_graph6(const Graph & g) -> std::string
    {
        std::string out;
        encode_size(g.size(), out);
        int acc = 0, nbits = 0;
        for (int j = 1; j < g.size(); ++j)
            for (int i = 0; i < j; ++i) {
                acc = (acc << 1) | (g.adjacent(i, j) ? 1 : 0);
                if (++nbits == 6) {
                    out.push_back(static_cast<char>(acc + 63));
                    acc = 0;
                    nbits = 0;
                }
            }
        if (nbits > 0)
            out.push_back(static_cast<char>((acc << (6 - nbits)) + 63));
        return out;
    }

    auto from_graph6(std::string_view text) -> Graph
    {
        text = trim(text);
        if (text.starts_with(">>graph6<<"))
            text.remove_prefix(10);
        if (auto nl = text.find('\n'); nl != std::string_view::npos)
            text = trim(text.substr(0, nl));
        if (text.empty())
            throw ParseError("graph6: empty input");
        for (char c : text)
            if (c < 63 || c > 126)
                throw ParseError("graph6: byte outside 63..126");

        std::size_t pos = 0;
        auto take = [&]() -> int {
            if (pos >= text.size())
                throw ParseError("graph6: truncated size field");
            return text[pos++] - 63;
        };

        std::int64_t n;
        int first = take();
        if (first < 63)
            n = first;
        else if (pos < text.size() && text[pos] - 63 == 63) {
            ++pos;
            n = 0;
            for (int i = 0; i < 6; ++i)
                n = (n << 6) | take();
        }
        else {
            n = 0;
            for (int i = 0; i < 3; ++i)
                n = (n << 6) | take();
        }
        if (n > (1 << 20))
            throw ParseError("graph6: graph too large for dense representation");

        Graph g(static_cast<int>(n));
        std::int64_t pairs = n * (n - 1) / 2;
        std::int64_t expected = (pairs + 5) / 6;
        if (static_cast<std::int64_t>(text.size() - pos) != expected)
            throw ParseError("graph6: expected " + std::to_string(expected) + " adjacency bytes, got " + std::to_string(text.size() - pos));

        std::int64_t bit = 0;
        for (int j = 1; j < n; ++j)
            for (int i = 0; i < j; ++i, ++bit) {
                int byte = text[pos + static_cast<std::size_t>(bit / 6)] - 63;
                if ((byte >> (5 - bit % 6)) & 1)
                    g.add_edge(i, j);
            }
        if (bit % 6) {
            int byte = text.back() - 63;
            if (byte & ((1 << (6 - bit % 6)) - 1))
                throw ParseError("graph6: nonzero padding bits");
        }
        g.check_invariants();
        return g;
    }

    auto to_edge_list(const Graph & g) -> std::string
    {
        std::ostringstream out;
        out << "n " << g.size() << '\n';
        for (auto [u, v] : g.edges())
            out << u << ' ' << v << '\n';
        return out.str();
    }

    auto from_edge_list(std::string_view text) -> Graph
    {
        std::optional<Graph> g;
        std::size_t start = 0;
        while (start <= text.size()) {
            auto end = text.find('\n', start);
            auto line = trim(text.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
            start = end == std::string_view::npos ? text.size() + 1 : end + 1;
            if (auto hash = line.find('#'); hash != std::string_view::npos)
                line = trim(line.substr(0, hash));
            if (line.empty())
                continue;

            auto space = line.find_first_of(" \t");
            if (space == std::string_view::npos)
                throw ParseError("edge list: malformed line '" + std::string(line) + "'");
            auto a = trim(line.substr(0, space)), b = trim(line.substr(space + 1));

            if (! g) {
                if (a != "n")
                    throw ParseError("edge list: missing 'n <count>' header");
                g.emplace(parse_int(b, line));
                continue;
            }
            int u = parse_int(a, line), v = parse_int(b, line);
            if (u < 0 || v < 0 || u >= g->size() || v >= g->size() || u == v)
                throw ParseError("edge list: bad edge '" + std::string(line) + "'");
            g->add_edge(u, v);
        }
        if (! g)
            throw ParseError("edge list: missing 'n <count>' header");
        g->check_invariants();
        return *g;
    }

    auto parse_graph_format(std::string_view name) -> GraphFormat
    {
        if (name == "graph6" || name == "g6")
            return GraphFormat::graph6;
        if (name == "edgelist" || name == "edge-list")
            return GraphFormat::edge_list;
        throw ParseError("unknown graph format '" + std::string(name) + "'");
    }

    auto write_graph(const Graph & g, GraphFormat format) -> std::string
    {
        return format == GraphFormat::graph6 ? to_graph6(g) + "\n" : to_edge_list(g);
    }

    auto read_graph(std::string_view text, GraphFormat format) -> Graph
    {
        return format == GraphFormat::graph6 ? from_graph6(text) : from_edge_list(text);
    }
}
