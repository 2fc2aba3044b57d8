#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dichro
{
    using std::pair;
    using std::string;
    using std::vector;

    class Error : public std::invalid_argument
    {
        public:
            using std::invalid_argument::invalid_argument;
    };

    enum class Colour : std::uint8_t { Red, Blue };

    inline auto other(Colour c) -> Colour { return c == Colour::Red ? Colour::Blue : Colour::Red; }
    inline auto colour_name(Colour c) -> const char * { return c == Colour::Red ? "red" : "blue"; }

    // Square bit matrix, one row of 64-bit words per vertex.
    class BitMatrix
    {
        private:
            int _n = 0;
            int _words = 0;
            vector<std::uint64_t> _bits;

        public:
            BitMatrix() = default;
            explicit BitMatrix(int n) : _n(n), _words((n + 63) / 64), _bits(std::size_t(n) * _words, 0) {}

            auto size() const -> int { return _n; }
            auto words() const -> int { return _words; }

            auto test(int i, int j) const -> bool
            {
                return (_bits[std::size_t(i) * _words + (j >> 6)] >> (j & 63)) & 1;
            }

            auto set(int i, int j) -> void { _bits[std::size_t(i) * _words + (j >> 6)] |= std::uint64_t(1) << (j & 63); }
            auto reset(int i, int j) -> void { _bits[std::size_t(i) * _words + (j >> 6)] &= ~(std::uint64_t(1) << (j & 63)); }

            auto row(int i) const -> const std::uint64_t * { return _bits.data() + std::size_t(i) * _words; }

            auto operator==(const BitMatrix &) const -> bool = default;
    };

    // Two symmetric relations over 0..n-1; loops live on the diagonal.
    class TwoEdgeColouredGraph
    {
        private:
            int _n = 0;
            BitMatrix _blue, _red;

            auto check(int u, int v) const -> void
            {
                if (u < 0 || v < 0 || u >= _n || v >= _n)
                    throw Error("vertex out of range: " + std::to_string(u) + "," + std::to_string(v));
            }

        public:
            TwoEdgeColouredGraph() = default;
            explicit TwoEdgeColouredGraph(int n) : _n(n), _blue(n), _red(n)
            {
                if (n < 0)
                    throw Error("negative vertex count");
            }

            auto size() const -> int { return _n; }

            auto blue(int u, int v) const -> bool { return _blue.test(u, v); }
            auto red(int u, int v) const -> bool { return _red.test(u, v); }
            auto has(Colour c, int u, int v) const -> bool { return c == Colour::Red ? red(u, v) : blue(u, v); }
            auto star(int u, int v) const -> bool { return blue(u, v) && red(u, v); }
            auto adjacent(int u, int v) const -> bool { return blue(u, v) || red(u, v); }

            // 0 none, 1 red, 2 blue, 3 both
            auto code(int u, int v) const -> int { return int(red(u, v)) | (int(blue(u, v)) << 1); }

            auto relation(Colour c) const -> const BitMatrix & { return c == Colour::Red ? _red : _blue; }

            auto add(Colour c, int u, int v) -> void
            {
                check(u, v);
                auto &m = c == Colour::Red ? _red : _blue;
                m.set(u, v);
                m.set(v, u);
            }

            auto remove(Colour c, int u, int v) -> void
            {
                check(u, v);
                auto &m = c == Colour::Red ? _red : _blue;
                m.reset(u, v);
                m.reset(v, u);
            }

            auto add_blue(int u, int v) -> void { add(Colour::Blue, u, v); }
            auto add_red(int u, int v) -> void { add(Colour::Red, u, v); }
            auto add_star(int u, int v) -> void { add_blue(u, v); add_red(u, v); }

            auto set_code(int u, int v, int code) -> void
            {
                remove(Colour::Red, u, v);
                remove(Colour::Blue, u, v);
                if (code & 1) add_red(u, v);
                if (code & 2) add_blue(u, v);
            }

            auto operator==(const TwoEdgeColouredGraph &) const -> bool = default;
    };

    enum class Entry : std::uint8_t { Zero, One, Star };

    inline auto entry_char(Entry e) -> char { return e == Entry::Zero ? '0' : e == Entry::One ? '1' : '*'; }

    inline auto entry_from_char(char c) -> Entry
    {
        switch (c) {
            case '0': return Entry::Zero;
            case '1': return Entry::One;
            case '*': return Entry::Star;
        }
        throw Error(string("bad matrix entry '") + c + "'");
    }

    class StarMatrix
    {
        private:
            int _n = 0;
            vector<Entry> _e;

        public:
            StarMatrix() = default;
            explicit StarMatrix(int n) : _n(n), _e(std::size_t(n) * n, Entry::Zero) {}

            // rows such as {"0*", "*1"}
            StarMatrix(std::initializer_list<string> rows) : StarMatrix(vector<string>(rows)) {}

            explicit StarMatrix(const vector<string> &rows) : StarMatrix(int(rows.size()))
            {
                for (int i = 0; i < _n; ++i) {
                    if (int(rows[i].size()) != _n)
                        throw Error("matrix is not square");
                    for (int j = 0; j < _n; ++j)
                        _e[std::size_t(i) * _n + j] = entry_from_char(rows[i][j]);
                }
                if (! symmetric())
                    throw Error("matrix is not symmetric");
            }

            auto size() const -> int { return _n; }
            auto at(int i, int j) const -> Entry { return _e[std::size_t(i) * _n + j]; }
            auto set(int i, int j, Entry x) -> void { _e[std::size_t(i) * _n + j] = x; _e[std::size_t(j) * _n + i] = x; }

            auto symmetric() const -> bool
            {
                for (int i = 0; i < _n; ++i)
                    for (int j = 0; j < i; ++j)
                        if (at(i, j) != at(j, i))
                            return false;
                return true;
            }

            auto rows() const -> vector<string>
            {
                vector<string> r(_n, string(_n, '0'));
                for (int i = 0; i < _n; ++i)
                    for (int j = 0; j < _n; ++j)
                        r[i][j] = entry_char(at(i, j));
                return r;
            }

            auto operator==(const StarMatrix &) const -> bool = default;
    };

    class SimpleGraph
    {
        private:
            int _n = 0;
            BitMatrix _adj;

        public:
            SimpleGraph() = default;
            explicit SimpleGraph(int n) : _n(n), _adj(n) {}
            SimpleGraph(int n, const vector<pair<int, int>> &edges) : SimpleGraph(n)
            {
                for (auto [u, v] : edges)
                    add_edge(u, v);
            }

            auto size() const -> int { return _n; }
            auto has_edge(int u, int v) const -> bool { return _adj.test(u, v); }
            auto has_loop(int v) const -> bool { return _adj.test(v, v); }

            auto add_edge(int u, int v) -> void
            {
                if (u < 0 || v < 0 || u >= _n || v >= _n)
                    throw Error("vertex out of range");
                _adj.set(u, v);
                _adj.set(v, u);
            }

            auto remove_edge(int u, int v) -> void { _adj.reset(u, v); _adj.reset(v, u); }

            auto loopless() const -> bool
            {
                for (int v = 0; v < _n; ++v)
                    if (has_loop(v))
                        return false;
                return true;
            }

            auto edges() const -> vector<pair<int, int>>
            {
                vector<pair<int, int>> result;
                for (int u = 0; u < _n; ++u)
                    for (int v = u; v < _n; ++v)
                        if (has_edge(u, v))
                            result.emplace_back(u, v);
                return result;
            }

            auto operator==(const SimpleGraph &) const -> bool = default;
    };

    struct Digraph
    {
        int n = 0;
        vector<vector<int>> out;

        Digraph() = default;
        explicit Digraph(int n_) : n(n_), out(n_) {}

        auto add_arc(int u, int v) -> void { out[u].push_back(v); }
        auto has_arc(int u, int v) const -> bool { return std::find(out[u].begin(), out[u].end(), v) != out[u].end(); }
    };

    inline auto is_reflexive(const TwoEdgeColouredGraph & h) -> bool
    {
        for (int v = 0; v < h.size(); ++v)
            if (! h.adjacent(v, v))
                return false;
        return true;
    }

    inline auto is_complete(const TwoEdgeColouredGraph & h) -> bool
    {
        for (int u = 0; u < h.size(); ++u)
            for (int v = u + 1; v < h.size(); ++v)
                if (! h.adjacent(u, v))
                    return false;
        return true;
    }

    inline auto is_reflexive_complete(const TwoEdgeColouredGraph & h) -> bool { return is_reflexive(h) && is_complete(h); }

    inline auto require_reflexive_complete(const TwoEdgeColouredGraph & h) -> void
    {
        if (! is_reflexive(h))
            throw Error("template is not reflexive");
        if (! is_complete(h))
            throw Error("template is not complete");
    }

    inline auto star_loops(const TwoEdgeColouredGraph & h) -> vector<int>
    {
        vector<int> result;
        for (int v = 0; v < h.size(); ++v)
            if (h.star(v, v))
                result.push_back(v);
        return result;
    }

    inline auto has_star_loop(const TwoEdgeColouredGraph & h) -> bool { return ! star_loops(h).empty(); }

    inline auto star_edges(const TwoEdgeColouredGraph & h) -> vector<pair<int, int>>
    {
        vector<pair<int, int>> result;
        for (int u = 0; u < h.size(); ++u)
            for (int v = u; v < h.size(); ++v)
                if (h.star(u, v))
                    result.emplace_back(u, v);
        return result;
    }

    inline auto edges_of(const TwoEdgeColouredGraph & h, Colour c) -> vector<pair<int, int>>
    {
        vector<pair<int, int>> result;
        for (int u = 0; u < h.size(); ++u)
            for (int v = u; v < h.size(); ++v)
                if (h.has(c, u, v))
                    result.emplace_back(u, v);
        return result;
    }

    inline auto from_matrix(const StarMatrix & m) -> TwoEdgeColouredGraph
    {
        if (! m.symmetric())
            throw Error("matrix is not symmetric");
        TwoEdgeColouredGraph h(m.size());
        for (int i = 0; i < m.size(); ++i)
            for (int j = i; j < m.size(); ++j) {
                auto e = m.at(i, j);
                if (e != Entry::Zero) h.add_blue(i, j);
                if (e != Entry::One) h.add_red(i, j);
            }
        return h;
    }

    inline auto to_matrix(const TwoEdgeColouredGraph & h) -> StarMatrix
    {
        require_reflexive_complete(h);
        StarMatrix m(h.size());
        for (int i = 0; i < h.size(); ++i)
            for (int j = i; j < h.size(); ++j)
                m.set(i, j, h.star(i, j) ? Entry::Star : h.blue(i, j) ? Entry::One : Entry::Zero);
        return m;
    }

    inline auto nu(const SimpleGraph & g) -> TwoEdgeColouredGraph
    {
        if (! g.loopless())
            throw Error("nu needs a loopless graph");
        TwoEdgeColouredGraph h(g.size());
        for (int u = 0; u < g.size(); ++u)
            for (int v = u + 1; v < g.size(); ++v)
                h.add(g.has_edge(u, v) ? Colour::Blue : Colour::Red, u, v);
        return h;
    }

    inline auto star_encode(const SimpleGraph & g) -> TwoEdgeColouredGraph
    {
        TwoEdgeColouredGraph h(g.size());
        for (int u = 0; u < g.size(); ++u)
            for (int v = u; v < g.size(); ++v)
                h.add(g.has_edge(u, v) ? Colour::Blue : Colour::Red, u, v);
        return h;
    }

    inline auto dual(const TwoEdgeColouredGraph & h) -> TwoEdgeColouredGraph
    {
        TwoEdgeColouredGraph d(h.size());
        for (int u = 0; u < h.size(); ++u)
            for (int v = u; v < h.size(); ++v) {
                if (h.red(u, v)) d.add_blue(u, v);
                if (h.blue(u, v)) d.add_red(u, v);
            }
        return d;
    }

    // Induced substructure, vertices renumbered in the given order.
    inline auto induced(const TwoEdgeColouredGraph & h, const vector<int> & vertices) -> TwoEdgeColouredGraph
    {
        TwoEdgeColouredGraph s(int(vertices.size()));
        for (int i = 0; i < s.size(); ++i)
            for (int j = i; j < s.size(); ++j)
                s.set_code(i, j, h.code(vertices[i], vertices[j]));
        return s;
    }

    // perm[v] is the new name of v.
    inline auto relabel(const TwoEdgeColouredGraph & h, const vector<int> & perm) -> TwoEdgeColouredGraph
    {
        TwoEdgeColouredGraph r(h.size());
        for (int u = 0; u < h.size(); ++u)
            for (int v = u; v < h.size(); ++v)
                r.set_code(perm[u], perm[v], h.code(u, v));
        return r;
    }

    inline auto ipow(long long base, int e) -> long long
    {
        long long r = 1;
        for (int i = 0; i < e; ++i) {
            if (base != 0 && r > std::numeric_limits<long long>::max() / base)
                throw Error("power size overflow");
            r *= base;
        }
        return r;
    }

    // Mixed-radix little-endian: tuple[0] is the least significant digit.
    inline auto decode_tuple(long long index, int base, int arity) -> vector<int>
    {
        vector<int> t(arity);
        for (int i = 0; i < arity; ++i) {
            t[i] = int(index % base);
            index /= base;
        }
        return t;
    }

    inline auto encode_tuple(const vector<int> & t, int base) -> long long
    {
        long long index = 0;
        for (int i = int(t.size()) - 1; i >= 0; --i)
            index = index * base + t[i];
        return index;
    }

    // Product vertex (g, h) has index g + |G| * h.
    inline auto product(const TwoEdgeColouredGraph & g, const TwoEdgeColouredGraph & h) -> TwoEdgeColouredGraph
    {
        int a = g.size(), b = h.size();
        TwoEdgeColouredGraph p(a * b);
        for (int x = 0; x < a * b; ++x)
            for (int y = x; y < a * b; ++y) {
                int g1 = x % a, h1 = x / a, g2 = y % a, h2 = y / a;
                if (g.red(g1, g2) && h.red(h1, h2)) p.add_red(x, y);
                if (g.blue(g1, g2) && h.blue(h1, h2)) p.add_blue(x, y);
            }
        return p;
    }

    inline auto power(const TwoEdgeColouredGraph & h, int m) -> TwoEdgeColouredGraph
    {
        if (m < 1)
            throw Error("power exponent must be at least 1");
        auto n = ipow(h.size(), m);
        if (n > 20000)
            throw Error("power too large");
        TwoEdgeColouredGraph p{ int(n) };
        for (long long x = 0; x < n; ++x) {
            auto tx = decode_tuple(x, h.size(), m);
            for (long long y = x; y < n; ++y) {
                auto ty = decode_tuple(y, h.size(), m);
                bool r = true, b = true;
                for (int i = 0; i < m; ++i) {
                    r = r && h.red(tx[i], ty[i]);
                    b = b && h.blue(tx[i], ty[i]);
                }
                if (r) p.add_red(int(x), int(y));
                if (b) p.add_blue(int(x), int(y));
            }
        }
        return p;
    }

    constexpr int infinite_girth = std::numeric_limits<int>::max();

    inline auto girth(const TwoEdgeColouredGraph & h) -> int
    {
        int n = h.size();
        for (int v = 0; v < n; ++v)
            if (h.adjacent(v, v))
                return 1;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (h.star(u, v))
                    return 2;

        // shortest cycle in the underlying simple graph via BFS from every vertex
        int best = infinite_girth;
        for (int s = 0; s < n; ++s) {
            vector<int> dist(n, -1), parent(n, -1), queue{ s };
            dist[s] = 0;
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                int u = queue[qi];
                for (int w = 0; w < n; ++w) {
                    if (w == u || ! h.adjacent(u, w))
                        continue;
                    if (dist[w] == -1) {
                        dist[w] = dist[u] + 1;
                        parent[w] = u;
                        queue.push_back(w);
                    }
                    else if (parent[u] != w)
                        best = std::min(best, dist[u] + dist[w] + 1);
                }
            }
        }
        return best;
    }

    // Arcs of Alt(H); tags record the loop colours of each vertex.
    struct AltDigraph
    {
        Digraph arcs;
        vector<bool> blue_tag, red_tag;
    };

    inline auto alt_digraph(const TwoEdgeColouredGraph & h) -> AltDigraph
    {
        if (! is_reflexive(h))
            throw Error("alternating digraph needs a reflexive structure");
        AltDigraph a{ Digraph(h.size()), vector<bool>(h.size()), vector<bool>(h.size()) };
        for (int x = 0; x < h.size(); ++x) {
            a.blue_tag[x] = h.blue(x, x);
            a.red_tag[x] = h.red(x, x);
            for (int y = 0; y < h.size(); ++y)
                if (x != y && ((h.blue(x, x) && h.red(x, y)) || (h.red(x, x) && h.blue(x, y))))
                    a.arcs.add_arc(x, y);
        }
        return a;
    }

    constexpr int canonical_form_limit = 8;

    // Lexicographically least upper-triangle code sequence over all relabellings.
    inline auto canonical_form(const TwoEdgeColouredGraph & h) -> string
    {
        int n = h.size();
        if (n > canonical_form_limit)
            throw Error("canonical_form is limited to " + std::to_string(canonical_form_limit) + " vertices");
        vector<int> order(n);
        for (int i = 0; i < n; ++i)
            order[i] = i;

        string best, current(std::size_t(n) * (n + 1) / 2, '0');
        bool first = true;
        do {
            std::size_t k = 0;
            bool worse = false, better = first;
            for (int i = 0; i < n && ! worse; ++i)
                for (int j = i; j < n; ++j) {
                    char c = char('0' + h.code(order[i], order[j]));
                    current[k] = c;
                    if (! better) {
                        if (c > best[k]) { worse = true; break; }
                        if (c < best[k]) better = true;
                    }
                    ++k;
                }
            if (! worse && better) {
                best = current;
                first = false;
            }
        } while (std::next_permutation(order.begin(), order.end()));

        return std::to_string(n) + ":" + best;
    }

    inline auto from_canonical_form(const string & form) -> TwoEdgeColouredGraph
    {
        auto colon = form.find(':');
        if (colon == string::npos)
            throw Error("malformed canonical form");
        int n = std::stoi(form.substr(0, colon));
        TwoEdgeColouredGraph h(n);
        std::size_t k = colon + 1;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                h.set_code(i, j, form.at(k++) - '0');
        return h;
    }

    // All reflexive complete structures on n vertices up to isomorphism,
    // sorted by canonical form.
    inline auto enumerate_reflexive_complete(int n, bool allow_star_loops = true) -> vector<TwoEdgeColouredGraph>
    {
        if (n < 1 || n > 5)
            throw Error("enumeration supports 1..5 vertices");
        vector<pair<int, int>> slots;
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                slots.emplace_back(i, j);

        vector<string> forms;
        vector<int> codes(slots.size(), 1);
        while (true) {
            TwoEdgeColouredGraph h(n);
            bool skip = false;
            for (std::size_t k = 0; k < slots.size(); ++k) {
                h.set_code(slots[k].first, slots[k].second, codes[k]);
                if (! allow_star_loops && slots[k].first == slots[k].second && codes[k] == 3)
                    skip = true;
            }
            if (! skip)
                forms.push_back(canonical_form(h));

            std::size_t k = 0;
            while (k < codes.size() && codes[k] == 3)
                codes[k++] = 1;
            if (k == codes.size())
                break;
            ++codes[k];
        }

        std::sort(forms.begin(), forms.end());
        forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
        vector<TwoEdgeColouredGraph> result;
        result.reserve(forms.size());
        for (auto & f : forms)
            result.push_back(from_canonical_form(f));
        return result;
    }
}
