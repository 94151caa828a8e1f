#pragma once

#include "purepair/blockade.hpp"
#include "purepair/trees.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace purepair
{
    /**
     * An induced copy of a pattern using at most one vertex per block.
     *
     * vertex[p] is the host vertex of pattern vertex p and block_index[p]
     * the index of the block holding it.
     */
    struct RainbowEmbedding
    {
        std::string pattern;
        std::vector<int> vertex;
        std::vector<int> block_index;

        auto support() const -> Support;

        friend auto operator==(const RainbowEmbedding &, const RainbowEmbedding &) -> bool = default;
    };

    enum class Side
    {
        any,
        left,
        right
    };

    auto side_name(Side s) -> const char *;

    /**
     * A rainbow copy of the ordered tree J whose block order matches the
     * label order. With a support, label k goes to the k-th smallest index
     * of the support. Exact backtracking; the first copy in (block index,
     * vertex) lexicographic order is returned.
     */
    auto find_rainbow_copy(const Blockade & b, const OrderedTree & j, const std::optional<Support> & support = std::nullopt)
        -> std::optional<RainbowEmbedding>;

    /**
     * Rainbow copy of J with label k in blocks[k], for an explicit list of
     * t = |J| vertex sets (assumed pairwise disjoint). Returns the images.
     */
    auto find_rainbow_in_blocks(const Graph & g, const OrderedTree & j, std::span<const VertexSet> blocks)
        -> std::optional<std::vector<int>>;

    struct DirectedQuery
    {
        /// left: every used block index >= the root's; right: <=; any: unconstrained.
        Side side = Side::left;
        /// Fix the image of the root.
        std::optional<int> root_vertex;
        /// Restrict all images to this set (the root's image included).
        std::optional<VertexSet> allowed;
    };

    /// A rainbow copy of the rooted tree with the requested side constraint.
    auto find_directed_rainbow(const Blockade & b, const RootedTree & t, const DirectedQuery & query = {})
        -> std::optional<RainbowEmbedding>;

    /// A rainbow copy of an arbitrary pattern graph, vertex 0 first; used for unordered forests.
    auto find_rainbow_pattern(const Blockade & b, const Graph & pattern, const std::optional<VertexSet> & allowed = std::nullopt)
        -> std::optional<RainbowEmbedding>;

    struct RainbowCheck
    {
        /// Require block order to follow pattern vertex order.
        bool ordered = false;
        Side side = Side::any;
        int root = 0;
    };

    /**
     * Independent verifier: injective, each image in its claimed block, one
     * vertex per block, induced adjacency equal to the pattern's, plus the
     * order / side constraints. Returns an empty string when valid, else a
     * description of the first violation.
     */
    auto verify_rainbow(const Blockade & b, const Graph & pattern, const RainbowEmbedding & e, const RainbowCheck & check = {})
        -> std::string;
}
