#pragma once

#include <dichro/homsearch.hpp>
#include <dichro/scc.hpp>

namespace dichro
{
    // Literal node 2*v + b stands for "x_v == b".
    class TwoSat
    {
        private:
            int _vars;
            Digraph _implications;

            static auto node(int v, bool value) -> int { return 2 * v + (value ? 1 : 0); }

        public:
            explicit TwoSat(int vars) : _vars(vars), _implications(2 * vars) {}

            // (x_a == va) or (x_b == vb)
            auto add_clause(int a, bool va, int b, bool vb) -> void
            {
                _implications.add_arc(node(a, ! va), node(b, vb));
                _implications.add_arc(node(b, ! vb), node(a, va));
            }

            auto force(int a, bool va) -> void { add_clause(a, va, a, va); }

            auto solve() const -> optional<vector<bool>>
            {
                auto comp = strongly_connected_components(_implications);
                vector<bool> value(_vars);
                for (int v = 0; v < _vars; ++v) {
                    int t = comp[node(v, true)], f = comp[node(v, false)];
                    if (t == f)
                        return std::nullopt;
                    // Tarjan numbers components in reverse topological order
                    value[v] = t < f;
                }
                return value;
            }
    };

    // List CSP over a template with at most two vertices.
    inline auto solve_base2(const ListCspInstance & inst, const TwoEdgeColouredGraph & h) -> optional<Homomorphism>
    {
        int m = h.size(), n = inst.graph.size();
        if (m > 2)
            throw Error("base solver needs a template with at most two vertices");
        validate_instance(inst, m);
        auto & g = inst.graph;

        if (m == 0) {
            if (n == 0)
                return Homomorphism{};
            return std::nullopt;
        }

        auto allowed = [&] (int code, int a, int b) { return (h.code(a, b) & code) == code; };

        if (m == 1) {
            for (int v = 0; v < n; ++v) {
                if (inst.lists[v].empty())
                    return std::nullopt;
                for (int w = v; w < n; ++w)
                    if (! allowed(g.code(v, w), 0, 0))
                        return std::nullopt;
            }
            return Homomorphism(n, 0);
        }

        TwoSat sat(n);
        for (int v = 0; v < n; ++v) {
            bool has0 = false, has1 = false;
            for (int a : inst.lists[v])
                (a == 0 ? has0 : has1) = true;
            if (! has0 && ! has1)
                return std::nullopt;
            if (! has0) sat.force(v, true);
            if (! has1) sat.force(v, false);
            for (int a = 0; a < 2; ++a)
                if (! allowed(g.code(v, v), a, a))
                    sat.force(v, a == 0);
        }
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                int code = g.code(u, v);
                if (! code)
                    continue;
                for (int a = 0; a < 2; ++a)
                    for (int b = 0; b < 2; ++b)
                        if (! allowed(code, a, b))
                            sat.add_clause(u, a == 0, v, b == 0);
            }

        auto value = sat.solve();
        if (! value)
            return std::nullopt;
        Homomorphism f(n);
        for (int v = 0; v < n; ++v)
            f[v] = (*value)[v] ? 1 : 0;
        return f;
    }
}
