#pragma once

#include <dichro/graph.hpp>

#include <functional>
#include <numeric>

namespace dichro
{
    class UnionFind
    {
        private:
            vector<int> _parent;

        public:
            explicit UnionFind(int n) : _parent(n) { std::iota(_parent.begin(), _parent.end(), 0); }

            auto find(int x) -> int
            {
                while (_parent[x] != x) {
                    _parent[x] = _parent[_parent[x]];
                    x = _parent[x];
                }
                return x;
            }

            auto unite(int a, int b) -> void
            {
                a = find(a);
                b = find(b);
                if (a != b)
                    _parent[std::max(a, b)] = std::min(a, b);
            }
    };

    // A power H^m modulo an equivalence on tuples.
    struct QuotientPower
    {
        TwoEdgeColouredGraph graph;
        int base = 0;
        int arity = 0;
        vector<int> class_of;              // tuple index -> class id
        vector<vector<long long>> members; // class id -> tuple indices, lexicographic order

        auto representative(int c) const -> vector<int> { return decode_tuple(members[c].front(), base, arity); }
        auto class_of_tuple(const vector<int> & t) const -> int { return class_of[encode_tuple(t, base)]; }
    };

    constexpr long long quotient_tuple_limit = 200000;

    // Key ordering tuples lexicographically (first coordinate most significant).
    inline auto lex_key(long long index, int base, int arity) -> long long
    {
        auto t = decode_tuple(index, base, arity);
        long long key = 0;
        for (int i = 0; i < arity; ++i)
            key = key * base + t[i];
        return key;
    }

    // Calls visit(y) for every tuple y with x-y an edge of colour c in H^m.
    inline auto for_each_power_neighbour(const TwoEdgeColouredGraph & h, Colour c, const vector<int> & x,
            const std::function<void (long long)> & visit) -> void
    {
        int n = h.size(), m = int(x.size());
        vector<vector<int>> options(m);
        for (int i = 0; i < m; ++i)
            for (int v = 0; v < n; ++v)
                if (h.has(c, x[i], v))
                    options[i].push_back(v);
        for (auto & o : options)
            if (o.empty())
                return;

        vector<int> pos(m, 0);
        vector<long long> weight(m, 1);
        for (int i = 1; i < m; ++i)
            weight[i] = weight[i - 1] * n;
        while (true) {
            long long index = 0;
            for (int i = 0; i < m; ++i)
                index += options[i][pos[i]] * weight[i];
            visit(index);
            int i = 0;
            while (i < m && ++pos[i] == int(options[i].size()))
                pos[i++] = 0;
            if (i == m)
                break;
        }
    }

    inline auto quotient_power(const TwoEdgeColouredGraph & h, int arity,
            const std::function<void (const vector<int> &, UnionFind &)> & merge) -> QuotientPower
    {
        int n = h.size();
        auto total = ipow(n, arity);
        if (total > quotient_tuple_limit)
            throw Error("quotient power too large: " + std::to_string(total) + " tuples");

        UnionFind uf{ int(total) };
        for (long long x = 0; x < total; ++x)
            merge(decode_tuple(x, n, arity), uf);

        QuotientPower q;
        q.base = n;
        q.arity = arity;
        q.class_of.assign(total, -1);

        // number classes by their lexicographically smallest member
        vector<long long> order(total);
        std::iota(order.begin(), order.end(), 0);
        vector<long long> keys(total);
        for (long long x = 0; x < total; ++x)
            keys[x] = lex_key(x, n, arity);
        std::sort(order.begin(), order.end(), [&] (long long a, long long b) { return keys[a] < keys[b]; });

        vector<int> root_class(total, -1);
        for (auto x : order) {
            int r = uf.find(int(x));
            if (root_class[r] == -1) {
                root_class[r] = int(q.members.size());
                q.members.emplace_back();
            }
            q.class_of[x] = root_class[r];
            q.members[root_class[r]].push_back(x);
        }

        q.graph = TwoEdgeColouredGraph(int(q.members.size()));
        for (long long x = 0; x < total; ++x) {
            auto tx = decode_tuple(x, n, arity);
            int cx = q.class_of[x];
            for (auto c : { Colour::Red, Colour::Blue })
                for_each_power_neighbour(h, c, tx, [&] (long long y) {
                    int cy = q.class_of[y];
                    if (! q.graph.has(c, cx, cy))
                        q.graph.add(c, cx, cy);
                });
        }
        return q;
    }

    // H^4 modulo (a,r,e,a) ~ (r,a,r,e).
    inline auto siggers_power(const TwoEdgeColouredGraph & h) -> QuotientPower
    {
        int n = h.size();
        return quotient_power(h, 4, [n] (const vector<int> & t, UnionFind & uf) {
            if (t[0] == t[3]) {
                int a = t[0], r = t[1], e = t[2];
                uf.unite(int(encode_tuple(t, n)), int(encode_tuple({ r, a, r, e }, n)));
            }
        });
    }

    // H^p modulo cyclic rotation.
    inline auto cyclic_power(const TwoEdgeColouredGraph & h, int p) -> QuotientPower
    {
        if (p < 2)
            throw Error("cyclic power needs p >= 2");
        int n = h.size();
        return quotient_power(h, p, [n] (const vector<int> & t, UnionFind & uf) {
            vector<int> r(t.begin() + 1, t.end());
            r.push_back(t[0]);
            uf.unite(int(encode_tuple(t, n)), int(encode_tuple(r, n)));
        });
    }

    inline auto is_prime(int p) -> bool
    {
        if (p < 2)
            return false;
        for (int d = 2; d * d <= p; ++d)
            if (p % d == 0)
                return false;
        return true;
    }

    inline auto smallest_prime_above(int n) -> int
    {
        int p = n + 1;
        while (! is_prime(p))
            ++p;
        return p;
    }
}
