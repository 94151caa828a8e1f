#include "purepair/rainbow.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace purepair
{
    auto RainbowEmbedding::support() const -> Support
    {
        Support s = block_index;
        std::sort(s.begin(), s.end());
        return s;
    }

    auto side_name(Side s) -> const char *
    {
        switch (s) {
            case Side::any: return "any";
            case Side::left: return "left";
            case Side::right: return "right";
        }
        return "?";
    }

    namespace
    {
        // Ordered search over an explicit list of blocks (by position).
        class OrderedSearch
        {
        public:
            OrderedSearch(const Graph & g, std::vector<const VertexSet *> blocks, const OrderedTree & j, bool fixed) :
                _g(g),
                _blocks(std::move(blocks)),
                _j(j),
                _t(j.size()),
                _fixed(fixed),
                _pos(static_cast<std::size_t>(_t)),
                _vert(static_cast<std::size_t>(_t)),
                _buf(static_cast<std::size_t>(_t))
            {
            }

            auto run() -> bool
            {
                int k = static_cast<int>(_blocks.size());
                if (_t > k || (_fixed && _t != k))
                    return false;
                return rec(0, 0);
            }

            auto positions() const -> const std::vector<int> & { return _pos; }
            auto vertices() const -> const std::vector<int> & { return _vert; }

        private:
            const Graph & _g;
            std::vector<const VertexSet *> _blocks;
            const OrderedTree & _j;
            int _t;
            bool _fixed;
            std::vector<int> _pos, _vert;
            std::vector<VertexSet> _buf;

            auto rec(int k, int min_pos) -> bool
            {
                if (k == _t)
                    return true;
                int lo = min_pos, hi = static_cast<int>(_blocks.size()) - (_t - k);
                if (_fixed)
                    lo = hi = k;
                auto uk = static_cast<std::size_t>(k);
                for (int p = lo; p <= hi; ++p) {
                    auto & cand = _buf[uk];
                    cand = *_blocks[static_cast<std::size_t>(p)];
                    for (int i = 0; i < k && ! cand.empty(); ++i) {
                        auto & nb = _g.neighbours(_vert[static_cast<std::size_t>(i)]);
                        if (_j.adjacent(i, k))
                            cand &= nb;
                        else
                            cand -= nb;
                    }
                    for (int v = cand.first(); v != -1; v = cand.next(v)) {
                        _pos[uk] = p;
                        _vert[uk] = v;
                        if (rec(k + 1, p + 1))
                            return true;
                    }
                }
                return false;
            }
        };

        class PatternSearch
        {
        public:
            PatternSearch(const Blockade & b, const Graph & pattern, int root, Side side, std::optional<int> root_vertex, const std::optional<VertexSet> & allowed) :
                _b(b),
                _g(b.host()),
                _pat(pattern),
                _side(side),
                _root_vertex(root_vertex),
                _allowed(allowed ? (*allowed & b.vertices()) : b.vertices()),
                _used(b.host().size()),
                _image(static_cast<std::size_t>(pattern.size()), -1),
                _buf(static_cast<std::size_t>(pattern.size()))
            {
                // breadth-first from the root, then any remaining components
                std::vector<char> seen(static_cast<std::size_t>(pattern.size()), 0);
                auto bfs = [&](int s) {
                    std::size_t start = _order.size();
                    _order.push_back(s);
                    seen[static_cast<std::size_t>(s)] = 1;
                    for (std::size_t i = start; i < _order.size(); ++i)
                        pattern.neighbours(_order[i]).for_each([&](int w) {
                            if (! seen[static_cast<std::size_t>(w)]) {
                                seen[static_cast<std::size_t>(w)] = 1;
                                _order.push_back(w);
                            }
                        });
                };
                bfs(root);
                for (int v = 0; v < pattern.size(); ++v)
                    if (! seen[static_cast<std::size_t>(v)])
                        bfs(v);

                int k = b.length(), n = b.host().size();
                _after.assign(static_cast<std::size_t>(k), VertexSet(n));
                _before.assign(static_cast<std::size_t>(k), VertexSet(n));
                for (int p = k - 2; p >= 0; --p)
                    _after[static_cast<std::size_t>(p)] = _after[static_cast<std::size_t>(p + 1)] | b.block(p + 1);
                for (int p = 1; p < k; ++p)
                    _before[static_cast<std::size_t>(p)] = _before[static_cast<std::size_t>(p - 1)] | b.block(p - 1);
            }

            auto run(const std::string & name) -> std::optional<RainbowEmbedding>
            {
                if (_pat.size() == 0 || _pat.size() > _b.length() || ! rec(0))
                    return std::nullopt;
                RainbowEmbedding e{name, _image, {}};
                for (int v : _image)
                    e.block_index.push_back(_b.index(_b.position_of_vertex(v)));
                return e;
            }

        private:
            const Blockade & _b;
            const Graph & _g;
            const Graph & _pat;
            Side _side;
            std::optional<int> _root_vertex;
            VertexSet _allowed;
            VertexSet _used;
            std::vector<int> _order;
            std::vector<int> _image;
            std::vector<VertexSet> _buf;
            std::vector<VertexSet> _after, _before;
            int _root_pos = -1;

            auto rec(std::size_t idx) -> bool
            {
                if (idx == _order.size())
                    return true;
                int u = _order[idx];
                auto & cand = _buf[idx];
                cand = _allowed;
                cand -= _used;
                if (idx == 0) {
                    if (_root_vertex) {
                        bool ok = cand.test(*_root_vertex);
                        cand = VertexSet(_g.size());
                        if (ok)
                            cand.set(*_root_vertex);
                    }
                }
                else if (_side == Side::left)
                    cand &= _after[static_cast<std::size_t>(_root_pos)];
                else if (_side == Side::right)
                    cand &= _before[static_cast<std::size_t>(_root_pos)];

                for (std::size_t i = 0; i < idx && ! cand.empty(); ++i) {
                    int w = _order[i];
                    auto & nb = _g.neighbours(_image[static_cast<std::size_t>(w)]);
                    if (_pat.adjacent(u, w))
                        cand &= nb;
                    else
                        cand -= nb;
                }

                for (int v = cand.first(); v != -1; v = cand.next(v)) {
                    int p = _b.position_of_vertex(v);
                    if (idx == 0)
                        _root_pos = p;
                    _image[static_cast<std::size_t>(u)] = v;
                    _used |= _b.block(p);
                    bool found = rec(idx + 1);
                    _used -= _b.block(p);
                    if (found)
                        return true;
                }
                _image[static_cast<std::size_t>(u)] = -1;
                return false;
            }
        };
    }

    auto find_rainbow_copy(const Blockade & b, const OrderedTree & j, const std::optional<Support> & support)
        -> std::optional<RainbowEmbedding>
    {
        std::vector<int> positions;
        if (support) {
            if (static_cast<int>(support->size()) != j.size())
                throw std::invalid_argument("find_rainbow_copy: support size differs from pattern size");
            Support s = *support;
            std::sort(s.begin(), s.end());
            for (int i : s) {
                int p = b.position_of(i);
                if (p == -1)
                    throw std::invalid_argument("find_rainbow_copy: support index " + std::to_string(i) + " not in blockade");
                positions.push_back(p);
            }
            if (std::adjacent_find(positions.begin(), positions.end()) != positions.end())
                throw std::invalid_argument("find_rainbow_copy: repeated support index");
        }
        else
            for (int p = 0; p < b.length(); ++p)
                positions.push_back(p);

        std::vector<const VertexSet *> blocks;
        for (int p : positions)
            blocks.push_back(&b.block(p));
        OrderedSearch search(b.host(), std::move(blocks), j, support.has_value());
        if (! search.run())
            return std::nullopt;
        RainbowEmbedding e{j.code(), search.vertices(), {}};
        for (int p : search.positions())
            e.block_index.push_back(b.index(positions[static_cast<std::size_t>(p)]));
        return e;
    }

    auto find_rainbow_in_blocks(const Graph & g, const OrderedTree & j, std::span<const VertexSet> blocks)
        -> std::optional<std::vector<int>>
    {
        std::vector<const VertexSet *> ptrs;
        for (auto & s : blocks)
            ptrs.push_back(&s);
        OrderedSearch search(g, std::move(ptrs), j, true);
        if (! search.run())
            return std::nullopt;
        return search.vertices();
    }

    auto find_directed_rainbow(const Blockade & b, const RootedTree & t, const DirectedQuery & query)
        -> std::optional<RainbowEmbedding>
    {
        auto pattern = t.to_graph();
        return PatternSearch(b, pattern, t.root(), query.side, query.root_vertex, query.allowed).run(t.canonical_code());
    }

    auto find_rainbow_pattern(const Blockade & b, const Graph & pattern, const std::optional<VertexSet> & allowed)
        -> std::optional<RainbowEmbedding>
    {
        return PatternSearch(b, pattern, 0, Side::any, std::nullopt, allowed).run("pattern");
    }

    auto verify_rainbow(const Blockade & b, const Graph & pattern, const RainbowEmbedding & e, const RainbowCheck & check)
        -> std::string
    {
        auto m = static_cast<std::size_t>(pattern.size());
        if (e.vertex.size() != m || e.block_index.size() != m)
            return "embedding size differs from pattern size";
        const Graph & g = b.host();
        std::set<int> seen_vertices, seen_blocks;
        for (std::size_t p = 0; p < m; ++p) {
            int v = e.vertex[p];
            if (v < 0 || v >= g.size())
                return "image out of range";
            if (! seen_vertices.insert(v).second)
                return "embedding not injective";
            int pos = b.position_of(e.block_index[p]);
            if (pos == -1)
                return "claimed block index " + std::to_string(e.block_index[p]) + " not in blockade";
            if (! b.block(pos).test(v))
                return "vertex " + std::to_string(v) + " not in claimed block " + std::to_string(e.block_index[p]);
            if (! seen_blocks.insert(e.block_index[p]).second)
                return "two pattern vertices in block " + std::to_string(e.block_index[p]);
        }
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q)
                if (pattern.adjacent(static_cast<int>(p), static_cast<int>(q)) != g.adjacent(e.vertex[p], e.vertex[q]))
                    return "adjacency mismatch between pattern vertices " + std::to_string(p) + " and " + std::to_string(q);
        if (check.ordered)
            for (std::size_t p = 1; p < m; ++p)
                if (e.block_index[p - 1] >= e.block_index[p])
                    return "block order does not follow label order";
        if (check.side != Side::any && m > 0) {
            int r = e.block_index[static_cast<std::size_t>(check.root)];
            for (int i : e.block_index)
                if ((check.side == Side::left && i < r) || (check.side == Side::right && i > r))
                    return std::string("not ") + side_name(check.side) + "-rainbow";
        }
        return {};
    }
}
