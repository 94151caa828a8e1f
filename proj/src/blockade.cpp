#include "purepair/blockade.hpp"
#include "purepair/rng.hpp"

#include <algorithm>
#include <stdexcept>

namespace purepair
{
    Blockade::Blockade(std::shared_ptr<const Graph> host, std::vector<Block> blocks) :
        _host(std::move(host)),
        _blocks(std::move(blocks))
    {
        if (! _host)
            throw std::invalid_argument("Blockade: null host");
        int n = _host->size();
        _owner.assign(static_cast<std::size_t>(n), -1);
        _fingerprint = _host->hash();
        for (std::size_t p = 0; p < _blocks.size(); ++p) {
            auto & blk = _blocks[p];
            if (blk.vertices.host_size() != n)
                throw std::invalid_argument("Blockade: block from a different host");
            if (blk.vertices.empty())
                throw std::invalid_argument("Blockade: empty block " + std::to_string(blk.index));
            if (p > 0 && blk.index <= _blocks[p - 1].index)
                throw std::invalid_argument("Blockade: indices not strictly increasing");
            blk.vertices.for_each([&](int v) {
                if (_owner[static_cast<std::size_t>(v)] != -1)
                    throw std::invalid_argument("Blockade: blocks overlap at vertex " + std::to_string(v));
                _owner[static_cast<std::size_t>(v)] = static_cast<int>(p);
            });
            _fingerprint = mix_seed(_fingerprint ^ mix_seed(static_cast<std::uint64_t>(blk.index)) ^ blk.vertices.hash());
        }
    }

    auto Blockade::from_sets(std::shared_ptr<const Graph> host, std::vector<VertexSet> sets) -> Blockade
    {
        std::vector<Block> blocks;
        for (std::size_t i = 0; i < sets.size(); ++i)
            blocks.push_back({static_cast<int>(i) + 1, std::move(sets[i])});
        return Blockade(std::move(host), std::move(blocks));
    }

    auto Blockade::width() const -> int
    {
        if (_blocks.empty())
            return 0;
        int w = _blocks.front().vertices.count();
        for (auto & blk : _blocks)
            w = std::min(w, blk.vertices.count());
        return w;
    }

    auto Blockade::indices() const -> std::vector<int>
    {
        std::vector<int> out;
        for (auto & blk : _blocks)
            out.push_back(blk.index);
        return out;
    }

    auto Blockade::position_of(int index) const -> int
    {
        auto it = std::lower_bound(_blocks.begin(), _blocks.end(), index, [](const Block & blk, int i) { return blk.index < i; });
        if (it == _blocks.end() || it->index != index)
            return -1;
        return static_cast<int>(it - _blocks.begin());
    }

    auto Blockade::vertices() const -> VertexSet
    {
        VertexSet out(_host->size());
        for (auto & blk : _blocks)
            out |= blk.vertices;
        return out;
    }

    auto Blockade::is_equicardinal() const -> bool
    {
        for (auto & blk : _blocks)
            if (blk.vertices.count() != _blocks.front().vertices.count())
                return false;
        return true;
    }

    auto sub_blockade(const Blockade & b, std::span<const int> indices) -> Blockade
    {
        if (indices.empty())
            throw std::invalid_argument("sub_blockade: empty index set");
        std::vector<int> sorted(indices.begin(), indices.end());
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        std::vector<Block> blocks;
        for (int i : sorted) {
            int p = b.position_of(i);
            if (p == -1)
                throw std::invalid_argument("sub_blockade: index " + std::to_string(i) + " not in blockade");
            blocks.push_back(b.blocks()[static_cast<std::size_t>(p)]);
        }
        return Blockade(b.host_ptr(), std::move(blocks));
    }

    auto contraction(const Blockade & b, const std::map<int, VertexSet> & shrink) -> Blockade
    {
        std::vector<Block> blocks = b.blocks();
        for (auto & [index, subset] : shrink) {
            int p = b.position_of(index);
            if (p == -1)
                throw std::invalid_argument("contraction: index " + std::to_string(index) + " not in blockade");
            if (subset.empty())
                throw std::invalid_argument("contraction: empty replacement for block " + std::to_string(index));
            if (! subset.is_subset_of(b.block(p)))
                throw std::invalid_argument("contraction: replacement for block " + std::to_string(index) + " leaves the block");
            blocks[static_cast<std::size_t>(p)].vertices = subset;
        }
        return Blockade(b.host_ptr(), std::move(blocks));
    }

    auto equicardinalize(const Blockade & b, int w) -> Blockade
    {
        if (w <= 0)
            throw std::invalid_argument("equicardinalize: width must be positive");
        if (w > b.width())
            throw std::invalid_argument("equicardinalize: width " + std::to_string(w) + " exceeds blockade width " + std::to_string(b.width()));
        std::vector<Block> blocks;
        for (auto & blk : b.blocks())
            blocks.push_back({blk.index, blk.vertices.lowest(w)});
        return Blockade(b.host_ptr(), std::move(blocks));
    }

    auto interval_group(const Blockade & b, int r) -> Blockade
    {
        if (r <= 0 || b.length() % r != 0)
            throw std::invalid_argument("interval_group: length " + std::to_string(b.length()) + " not divisible by " + std::to_string(r));
        std::vector<Block> blocks;
        for (int h = 0; h < b.length() / r; ++h) {
            VertexSet merged(b.host().size());
            for (int p = h * r; p < (h + 1) * r; ++p)
                merged |= b.block(p);
            blocks.push_back({h + 1, std::move(merged)});
        }
        return Blockade(b.host_ptr(), std::move(blocks));
    }

    auto reversed(const Blockade & b) -> Blockade
    {
        if (b.length() == 0)
            return b;
        int lo = b.index(0), hi = b.index(b.length() - 1);
        std::vector<Block> blocks;
        for (int p = b.length() - 1; p >= 0; --p)
            blocks.push_back({lo + hi - b.index(p), b.block(p)});
        return Blockade(b.host_ptr(), std::move(blocks));
    }

    auto is_contraction_of(const Blockade & small, const Blockade & big) -> bool
    {
        if (small.length() != big.length())
            return false;
        for (int p = 0; p < small.length(); ++p)
            if (small.index(p) != big.index(p) || ! small.block(p).is_subset_of(big.block(p)))
                return false;
        return true;
    }

    auto block_partition(std::shared_ptr<const Graph> g, int k) -> Blockade
    {
        int n = g->size();
        if (k <= 0 || n < k)
            throw std::invalid_argument("block_partition: need 1 <= K <= n");
        std::vector<VertexSet> sets;
        int start = 0;
        for (int i = 0; i < k; ++i) {
            int size = n / k + (i < n % k ? 1 : 0);
            VertexSet s(n);
            for (int v = start; v < start + size; ++v)
                s.set(v);
            start += size;
            sets.push_back(std::move(s));
        }
        return equicardinalize(Blockade::from_sets(std::move(g), std::move(sets)), n / k);
    }

    auto combinations(std::span<const int> items, int k) -> std::vector<std::vector<int>>
    {
        std::vector<std::vector<int>> out;
        int n = static_cast<int>(items.size());
        if (k < 0 || k > n)
            return out;
        std::vector<int> idx(static_cast<std::size_t>(k));
        for (int i = 0; i < k; ++i)
            idx[static_cast<std::size_t>(i)] = i;
        while (true) {
            std::vector<int> c;
            for (int i : idx)
                c.push_back(items[static_cast<std::size_t>(i)]);
            out.push_back(std::move(c));
            int i = k - 1;
            while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i)
                --i;
            if (i < 0)
                break;
            ++idx[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < k; ++j)
                idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
        }
        return out;
    }
}
