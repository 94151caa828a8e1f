#pragma once

#include "purepair/graph.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace purepair
{
    /// Standard graph6 encoding (no trailing newline).
    auto to_graph6(const Graph & g) -> std::string;

    /// Decodes one graph6 line; an optional ">>graph6<<" header is skipped.
    auto from_graph6(std::string_view text) -> Graph;

    /// "n <count>" header followed by one "u v" line per edge (u < v).
    auto to_edge_list(const Graph & g) -> std::string;

    /// Parses the edge-list format; blank lines and '#' comments are ignored.
    auto from_edge_list(std::string_view text) -> Graph;

    enum class GraphFormat
    {
        graph6,
        edge_list
    };

    auto parse_graph_format(std::string_view name) -> GraphFormat;
    auto write_graph(const Graph & g, GraphFormat format) -> std::string;
    auto read_graph(std::string_view text, GraphFormat format) -> Graph;
}
