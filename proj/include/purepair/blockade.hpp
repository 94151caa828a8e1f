#pragma once

#include "purepair/graph.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace purepair
{
    struct Block
    {
        int index;
        VertexSet vertices;

        friend auto operator==(const Block &, const Block &) -> bool = default;
    };

    /// Sorted set of block indices.
    using Support = std::vector<int>;

    /**
     * A sequence of pairwise disjoint nonempty vertex sets (blocks) of a host
     * graph, with strictly increasing integer indices.
     *
     * Blockades are immutable values; every operation below returns a new
     * one sharing the same host.
     */
    class Blockade
    {
    public:
        /// Validates disjointness, nonemptiness, and index order; throws std::invalid_argument.
        Blockade(std::shared_ptr<const Graph> host, std::vector<Block> blocks);

        /// Blocks indexed 1..K in the given order.
        static auto from_sets(std::shared_ptr<const Graph> host, std::vector<VertexSet> sets) -> Blockade;

        auto host() const -> const Graph & { return *_host; }
        auto host_ptr() const -> const std::shared_ptr<const Graph> & { return _host; }

        auto length() const -> int { return static_cast<int>(_blocks.size()); }
        /// Minimum block size; 0 for the empty blockade.
        auto width() const -> int;

        auto blocks() const -> const std::vector<Block> & { return _blocks; }
        auto block(int position) const -> const VertexSet & { return _blocks[static_cast<std::size_t>(position)].vertices; }
        auto index(int position) const -> int { return _blocks[static_cast<std::size_t>(position)].index; }
        auto indices() const -> std::vector<int>;
        /// Position of a block index, or -1.
        auto position_of(int index) const -> int;
        /// Position of the block containing vertex v, or -1.
        auto position_of_vertex(int v) const -> int { return _owner[static_cast<std::size_t>(v)]; }

        /// V(B), the union of all blocks.
        auto vertices() const -> VertexSet;
        auto is_equicardinal() const -> bool;

        /// Hash of host and blocks; equal blockades have equal fingerprints.
        auto fingerprint() const -> std::uint64_t { return _fingerprint; }

        friend auto operator==(const Blockade & a, const Blockade & b) -> bool
        {
            return a._blocks == b._blocks && (a._host == b._host || *a._host == *b._host);
        }

    private:
        std::shared_ptr<const Graph> _host;
        std::vector<Block> _blocks;
        std::vector<int> _owner;
        std::uint64_t _fingerprint = 0;
    };

    /// Keep only the listed indices (each must be present).
    auto sub_blockade(const Blockade & b, std::span<const int> indices) -> Blockade;

    /// Replace listed blocks by nonempty subsets of themselves; others unchanged.
    auto contraction(const Blockade & b, const std::map<int, VertexSet> & shrink) -> Blockade;

    /// Every block cut down to its w lowest-numbered vertices; 1 <= w <= width.
    auto equicardinalize(const Blockade & b, int w) -> Blockade;

    /// Consecutive runs of r blocks merged; the h-th run becomes block h (1-based).
    auto interval_group(const Blockade & b, int r) -> Blockade;

    /// Same blocks in reverse order; index i becomes (min + max - i).
    auto reversed(const Blockade & b) -> Blockade;

    /// Whether `small` is a contraction of `big` (same indices, blockwise subsets).
    auto is_contraction_of(const Blockade & small, const Blockade & big) -> bool;

    /// Partition 0..n-1 into K consecutive blocks, then equicardinalize to floor(n/K).
    auto block_partition(std::shared_ptr<const Graph> g, int k) -> Blockade;

    /// All k-subsets of `items` in lexicographic order.
    auto combinations(std::span<const int> items, int k) -> std::vector<std::vector<int>>;
}
