#pragma once

#include <dichro/decompose.hpp>
#include <dichro/homsearch.hpp>
#include <dichro/quotient.hpp>

namespace dichro
{
    // Dense table over H^arity, mixed-radix little-endian.
    struct Polymorphism
    {
        int arity = 0;
        int base = 0;
        vector<int> table;

        auto operator()(const vector<int> & args) const -> int { return table[encode_tuple(args, base)]; }
    };

    enum Identity : unsigned
    {
        Wnu = 1,
        Siggers = 2,
        Cyclic = 4,
        Conservative = 8,
        Idempotent = 16,
        Eq1 = 32
    };

    struct PolymorphismCheck
    {
        bool ok = true;
        string failure;
        vector<vector<int>> witness;
    };

    namespace detail
    {
        inline auto fail(string what, vector<vector<int>> witness) -> PolymorphismCheck
        {
            return { false, std::move(what), std::move(witness) };
        }
    }

    // Colour preservation over all edge tuples plus the requested identities.
    // Eq1 compares f (ternary) with partner (4-ary): f(y,x,x) = partner(y,x,x,x).
    inline auto verify_polymorphism(const TwoEdgeColouredGraph & h, const Polymorphism & f, unsigned identities,
            const Polymorphism * partner = nullptr) -> PolymorphismCheck
    {
        int n = h.size(), m = f.arity;
        auto total = ipow(n, m);
        if (f.base != n || (long long)(f.table.size()) != total)
            return detail::fail("table has the wrong shape", {});
        for (int v : f.table)
            if (v < 0 || v >= n)
                return detail::fail("table value out of range", {});

        for (long long x = 0; x < total; ++x) {
            auto tx = decode_tuple(x, n, m);
            for (auto c : { Colour::Red, Colour::Blue }) {
                optional<vector<int>> bad;
                for_each_power_neighbour(h, c, tx, [&] (long long y) {
                    if (! bad && ! h.has(c, f.table[x], f.table[y]))
                        bad = decode_tuple(y, n, m);
                });
                if (bad)
                    return detail::fail(string(colour_name(c)) + " edge not preserved", { tx, *bad });
            }
            if (identities & Conservative)
                if (std::find(tx.begin(), tx.end(), f.table[x]) == tx.end())
                    return detail::fail("not conservative", { tx });
            if (identities & Cyclic) {
                vector<int> r(tx.begin() + 1, tx.end());
                r.push_back(tx[0]);
                if (f(r) != f.table[x])
                    return detail::fail("not cyclic", { tx, r });
            }
        }

        for (int x = 0; x < n; ++x) {
            if ((identities & Idempotent) && f(vector<int>(m, x)) != x)
                return detail::fail("not idempotent", { vector<int>(m, x) });
            for (int y = 0; y < n; ++y) {
                if (identities & Wnu) {
                    vector<int> first(m, x);
                    first[0] = y;
                    for (int i = 1; i < m; ++i) {
                        vector<int> t(m, x);
                        t[i] = y;
                        if (f(t) != f(first))
                            return detail::fail("not a weak near-unanimity operation", { first, t });
                    }
                }
                if (identities & Eq1) {
                    if (! partner || m != 3 || partner->arity != 4)
                        return detail::fail("Eq1 needs a ternary table and a 4-ary partner", {});
                    if (f({ y, x, x }) != (*partner)({ y, x, x, x }))
                        return detail::fail("f3(y,x,x) differs from f4(y,x,x,x)", { { y, x, x }, { y, x, x, x } });
                }
            }
        }

        if (identities & Siggers) {
            if (m != 4)
                return detail::fail("Siggers identity needs arity 4", {});
            for (int a = 0; a < n; ++a)
                for (int r = 0; r < n; ++r)
                    for (int e = 0; e < n; ++e)
                        if (f({ a, r, e, a }) != f({ r, a, r, e }))
                            return detail::fail("not Siggers", { { a, r, e, a }, { r, a, r, e } });
        }
        return {};
    }

    struct PolymorphismSearch
    {
        SearchStatus status = SearchStatus::None;
        optional<Polymorphism> polymorphism;
    };

    constexpr unsigned long long default_polymorphism_budget = 20000000;

    // Homomorphisms Q -> H are exactly the polymorphisms satisfying the
    // identity that Q quotients by.
    inline auto search_quotient(const TwoEdgeColouredGraph & h, const QuotientPower & q, bool idempotent,
            unsigned long long budget) -> PolymorphismSearch
    {
        auto inst = with_full_lists(q.graph, h.size());
        if (idempotent)
            for (int x = 0; x < h.size(); ++x)
                inst.lists[q.class_of_tuple(vector<int>(q.arity, x))] = { x };
        auto r = search_hom(inst, h, budget);
        PolymorphismSearch out;
        out.status = r.status;
        if (r.status == SearchStatus::Found) {
            Polymorphism f{ q.arity, h.size(), vector<int>(q.class_of.size()) };
            for (std::size_t t = 0; t < q.class_of.size(); ++t)
                f.table[t] = r.map[q.class_of[t]];
            out.polymorphism = f;
        }
        return out;
    }

    inline auto find_siggers(const TwoEdgeColouredGraph & h, bool idempotent, bool best_effort = false,
            unsigned long long budget = default_polymorphism_budget) -> PolymorphismSearch
    {
        if (h.size() > 4 || (h.size() == 4 && ! best_effort))
            throw Error("Siggers search is exhaustive up to 3 vertices (4 with best effort)");
        return search_quotient(h, siggers_power(h), idempotent, budget);
    }

    inline auto find_cyclic(const TwoEdgeColouredGraph & h, int p, bool idempotent,
            unsigned long long budget = default_polymorphism_budget) -> PolymorphismSearch
    {
        if (p < 2)
            throw Error("cyclic arity must be at least 2");
        return search_quotient(h, cyclic_power(h, p), idempotent, budget);
    }

    // The ternary/4-ary pair from a tractable decomposition. A tuple is united
    // when all its entries lie in one block; otherwise the value is the first
    // entry lying in the highest block present.
    inline auto build_wnu_pair(const TwoEdgeColouredGraph & h, const Decomposition & d) -> pair<Polymorphism, Polymorphism>
    {
        if (! tractable_shape(d) || ! is_valid_decomposition(h, d))
            throw Error("not a tractable decomposition of this structure");
        int n = h.size();
        vector<int> block(n);
        for (std::size_t i = 0; i < d.blocks.size(); ++i)
            for (int v : d.blocks[i].vertices)
                block[v] = int(i);

        auto scattered = [&] (const vector<int> & t) -> optional<int> {
            int top = block[t[0]];
            bool united = true;
            for (int x : t) {
                united = united && block[x] == block[t[0]];
                top = std::max(top, block[x]);
            }
            if (united)
                return std::nullopt;
            for (int x : t)
                if (block[x] == top)
                    return x;
            return std::nullopt;
        };

        auto build = [&] (int arity, auto && united_rule) {
            Polymorphism f{ arity, n, vector<int>(ipow(n, arity)) };
            for (long long i = 0; i < (long long)(f.table.size()); ++i) {
                auto t = decode_tuple(i, n, arity);
                auto s = scattered(t);
                f.table[i] = s ? *s : united_rule(t);
            }
            return f;
        };

        auto count = [] (const vector<int> & t, int x) { return int(std::count(t.begin(), t.end(), x)); };

        auto f3 = build(3, [&] (const vector<int> & t) {
            for (int x : t)
                if (count(t, x) >= 2)
                    return x;
            return t[0];
        });
        auto f4 = build(4, [&] (const vector<int> & t) {
            for (int x : t)
                if (count(t, x) >= 3)
                    return x;
            return t[0];
        });
        return { f3, f4 };
    }
}
