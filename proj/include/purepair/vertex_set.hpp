#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace purepair
{
    /**
     * Dense bit-row subset of the vertices 0..n-1 of a host graph.
     *
     * All binary operations require both operands to have the same host
     * size. Bits past n in the last word are always zero.
     */
    class VertexSet
    {
    public:
        using Word = std::uint64_t;
        static constexpr int bits_per_word = 64;

        VertexSet() = default;

        explicit VertexSet(int n) :
            _size(n),
            _words(static_cast<std::size_t>((n + bits_per_word - 1) / bits_per_word), 0)
        {
            if (n < 0)
                throw std::invalid_argument("VertexSet: negative host size");
        }

        static auto full(int n) -> VertexSet
        {
            VertexSet s(n);
            for (auto & w : s._words)
                w = ~Word{0};
            s.trim();
            return s;
        }

        static auto of(int n, std::initializer_list<int> members) -> VertexSet
        {
            VertexSet s(n);
            for (int v : members)
                s.set(v);
            return s;
        }

        static auto from(int n, std::span<const int> members) -> VertexSet
        {
            VertexSet s(n);
            for (int v : members)
                s.set(v);
            return s;
        }

        auto host_size() const -> int { return _size; }

        auto set(int v) -> void
        {
            check(v);
            _words[static_cast<std::size_t>(v) / bits_per_word] |= Word{1} << (v % bits_per_word);
        }

        auto reset(int v) -> void
        {
            check(v);
            _words[static_cast<std::size_t>(v) / bits_per_word] &= ~(Word{1} << (v % bits_per_word));
        }

        auto test(int v) const -> bool
        {
            if (v < 0 || v >= _size)
                return false;
            return (_words[static_cast<std::size_t>(v) / bits_per_word] >> (v % bits_per_word)) & 1;
        }

        auto count() const -> int
        {
            int c = 0;
            for (auto w : _words)
                c += std::popcount(w);
            return c;
        }

        auto empty() const -> bool
        {
            for (auto w : _words)
                if (w)
                    return false;
            return true;
        }

        /// Smallest member, or -1.
        auto first() const -> int { return next(-1); }

        /// Smallest member strictly greater than v, or -1.
        auto next(int v) const -> int
        {
            int start = v + 1;
            if (start >= _size)
                return -1;
            auto wi = static_cast<std::size_t>(start) / bits_per_word;
            Word w = _words[wi] & (~Word{0} << (start % bits_per_word));
            while (true) {
                if (w)
                    return static_cast<int>(wi * bits_per_word) + std::countr_zero(w);
                if (++wi == _words.size())
                    return -1;
                w = _words[wi];
            }
        }

        template <typename F>
        auto for_each(F && f) const -> void
        {
            for (std::size_t wi = 0; wi < _words.size(); ++wi) {
                Word w = _words[wi];
                while (w) {
                    int b = std::countr_zero(w);
                    f(static_cast<int>(wi * bits_per_word) + b);
                    w &= w - 1;
                }
            }
        }

        auto members() const -> std::vector<int>
        {
            std::vector<int> out;
            out.reserve(static_cast<std::size_t>(count()));
            for_each([&](int v) { out.push_back(v); });
            return out;
        }

        /// The lowest `k` members (all of them if fewer).
        auto lowest(int k) const -> VertexSet
        {
            VertexSet out(_size);
            int taken = 0;
            for (int v = first(); v != -1 && taken < k; v = next(v), ++taken)
                out.set(v);
            return out;
        }

        auto intersects(const VertexSet & other) const -> bool
        {
            same_host(other);
            for (std::size_t i = 0; i < _words.size(); ++i)
                if (_words[i] & other._words[i])
                    return true;
            return false;
        }

        auto intersection_count(const VertexSet & other) const -> int
        {
            same_host(other);
            int c = 0;
            for (std::size_t i = 0; i < _words.size(); ++i)
                c += std::popcount(_words[i] & other._words[i]);
            return c;
        }

        auto is_subset_of(const VertexSet & other) const -> bool
        {
            same_host(other);
            for (std::size_t i = 0; i < _words.size(); ++i)
                if (_words[i] & ~other._words[i])
                    return false;
            return true;
        }

        auto operator|=(const VertexSet & other) -> VertexSet &
        {
            same_host(other);
            for (std::size_t i = 0; i < _words.size(); ++i)
                _words[i] |= other._words[i];
            return *this;
        }

        auto operator&=(const VertexSet & other) -> VertexSet &
        {
            same_host(other);
            for (std::size_t i = 0; i < _words.size(); ++i)
                _words[i] &= other._words[i];
            return *this;
        }

        /// Set difference.
        auto operator-=(const VertexSet & other) -> VertexSet &
        {
            same_host(other);
            for (std::size_t i = 0; i < _words.size(); ++i)
                _words[i] &= ~other._words[i];
            return *this;
        }

        friend auto operator|(VertexSet a, const VertexSet & b) -> VertexSet { return a |= b; }
        friend auto operator&(VertexSet a, const VertexSet & b) -> VertexSet { return a &= b; }
        friend auto operator-(VertexSet a, const VertexSet & b) -> VertexSet { return a -= b; }

        /// Complement relative to 0..n-1.
        auto operator~() const -> VertexSet
        {
            VertexSet out(*this);
            for (auto & w : out._words)
                w = ~w;
            out.trim();
            return out;
        }

        friend auto operator==(const VertexSet & a, const VertexSet & b) -> bool
        {
            return a._size == b._size && a._words == b._words;
        }

        auto words() const -> std::span<const Word> { return _words; }
        auto words_mut() -> std::span<Word> { return _words; }

        auto hash() const -> std::uint64_t
        {
            std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(_size);
            for (auto w : _words) {
                h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                h *= 0xbf58476d1ce4e5b9ULL;
            }
            return h;
        }

    private:
        int _size = 0;
        std::vector<Word> _words;

        auto check(int v) const -> void
        {
            if (v < 0 || v >= _size)
                throw std::out_of_range("VertexSet: vertex " + std::to_string(v) + " outside host of size " + std::to_string(_size));
        }

        auto same_host(const VertexSet & other) const -> void
        {
            if (other._size != _size)
                throw std::invalid_argument("VertexSet: host size mismatch");
        }

        auto trim() -> void
        {
            if (_size % bits_per_word && ! _words.empty())
                _words.back() &= (Word{1} << (_size % bits_per_word)) - 1;
        }
    };
}
