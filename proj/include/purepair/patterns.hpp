#pragma once

#include "purepair/graph.hpp"

#include <span>
#include <string_view>

namespace purepair
{
    /**
     * Pattern graphs by name:
     *   K1, K2 (or edge), P<n>, star<k> (or K1,<k>), spider[:a,b,...],
     *   T:delta,eta, a parenthesised rooted tree such as "(()())",
     *   or an explicit forest "m:u-v,..." with 1-based labels.
     * The default spider has three legs of length 2.
     */
    auto parse_pattern(std::string_view text) -> Graph;

    auto path_graph(int n) -> Graph;
    auto star_graph(int leaves) -> Graph;
    auto spider_graph(std::span<const int> legs) -> Graph;
}
