#pragma once

#include <dichro/classify.hpp>
#include <dichro/polysolve.hpp>

namespace dichro
{
    class RequiresOracle : public Error
    {
        public:
            RequiresOracle() : Error("template NP-complete; pass --oracle") {}
    };

    struct SandwichInstance
    {
        int n = 0;
        SimpleGraph mandatory;
        SimpleGraph allowed;
        optional<vector<vector<int>>> lists;
    };

    struct SandwichSolution
    {
        SimpleGraph edges;
        vector<int> partition;
    };

    inline auto validate_sandwich(const SandwichInstance & s) -> void
    {
        if (s.mandatory.size() != s.n || s.allowed.size() != s.n)
            throw Error("edge sets must live on the instance's vertices");
        if (! s.mandatory.loopless() || ! s.allowed.loopless())
            throw Error("sandwich edge sets must be loopless");
        for (auto [u, v] : s.mandatory.edges())
            if (! s.allowed.has_edge(u, v))
                throw Error("mandatory edge " + std::to_string(u) + "-" + std::to_string(v) + " is not allowed");
        if (s.lists && int(s.lists->size()) != s.n)
            throw Error("sandwich lists need one entry per vertex");
    }

    inline auto to_csp_instance(const SandwichInstance & s, int template_size) -> ListCspInstance
    {
        validate_sandwich(s);
        TwoEdgeColouredGraph g(s.n);
        for (int u = 0; u < s.n; ++u)
            for (int v = u + 1; v < s.n; ++v) {
                if (s.mandatory.has_edge(u, v)) g.add_blue(u, v);
                if (! s.allowed.has_edge(u, v)) g.add_red(u, v);
            }
        auto inst = with_full_lists(g, template_size);
        if (s.lists)
            inst.lists = *s.lists;
        validate_instance(inst, template_size);
        return inst;
    }

    // Pairs on a {1,*} entry go in; * entries only when mandatory.
    inline auto witness_edges(const StarMatrix & m, const SandwichInstance & s, const vector<int> & f) -> SimpleGraph
    {
        SimpleGraph e(s.n);
        for (int u = 0; u < s.n; ++u)
            for (int v = u + 1; v < s.n; ++v) {
                auto x = m.at(f[u], f[v]);
                if (x == Entry::One || (x == Entry::Star && s.mandatory.has_edge(u, v)))
                    e.add_edge(u, v);
            }
        return e;
    }

    inline auto verify_sandwich(const StarMatrix & m, const SandwichInstance & s, const SandwichSolution & sol) -> bool
    {
        if (sol.edges.size() != s.n || int(sol.partition.size()) != s.n || ! sol.edges.loopless())
            return false;
        for (int u = 0; u < s.n; ++u) {
            int a = sol.partition[u];
            if (a < 0 || a >= m.size())
                return false;
            if (s.lists && std::find((*s.lists)[u].begin(), (*s.lists)[u].end(), a) == (*s.lists)[u].end())
                return false;
            for (int v = u + 1; v < s.n; ++v) {
                bool in = sol.edges.has_edge(u, v);
                if (s.mandatory.has_edge(u, v) && ! in) return false;
                if (! s.allowed.has_edge(u, v) && in) return false;
                auto x = m.at(a, sol.partition[v]);
                if (in && x == Entry::Zero) return false;
                if (! in && x == Entry::One) return false;
            }
        }
        return true;
    }

    // Polynomial route when the matrix is tractable and the lists allow it;
    // exponential search only when allow_oracle is set.
    inline auto solve_list_sandwich(const StarMatrix & m, const SandwichInstance & s, bool allow_oracle) -> optional<SandwichSolution>
    {
        auto h = from_matrix(m);
        auto inst = to_csp_instance(s, m.size());
        optional<Homomorphism> f;
        auto rec = recognize_tractable(h);
        bool solved = false;
        if (rec) {
            try {
                f = solve_list_csp(h, *rec, inst);
                solved = true;
            }
            catch (const OpenListRegime &) {
                if (! allow_oracle)
                    throw;
            }
        }
        else if (! allow_oracle)
            throw RequiresOracle();
        if (! solved)
            f = find_hom(inst, h);
        if (! f)
            return std::nullopt;
        return SandwichSolution{ witness_edges(m, s, *f), *f };
    }

    inline auto solve_sandwich(const StarMatrix & m, const SandwichInstance & s, bool allow_oracle) -> optional<SandwichSolution>
    {
        return solve_list_sandwich(m, s, allow_oracle);
    }

    namespace detail
    {
        // Direct M-partition search on a fixed graph, vertices in index order.
        inline auto m_partition(const StarMatrix & m, const SimpleGraph & e, const optional<vector<vector<int>>> & lists)
            -> optional<vector<int>>
        {
            int n = e.size();
            vector<int> f(n, -1);
            std::function<bool (int)> extend = [&] (int v) -> bool {
                if (v == n)
                    return true;
                for (int a = 0; a < m.size(); ++a) {
                    if (lists && std::find((*lists)[v].begin(), (*lists)[v].end(), a) == (*lists)[v].end())
                        continue;
                    bool ok = true;
                    for (int u = 0; u < v && ok; ++u) {
                        auto x = m.at(f[u], a);
                        ok = e.has_edge(u, v) ? x != Entry::Zero : x != Entry::One;
                    }
                    if (ok) {
                        f[v] = a;
                        if (extend(v + 1))
                            return true;
                    }
                }
                return false;
            };
            if (extend(0))
                return f;
            return std::nullopt;
        }
    }

    constexpr int brute_force_free_pair_limit = 20;

    inline auto brute_force_sandwich(const StarMatrix & m, const SandwichInstance & s) -> optional<SandwichSolution>
    {
        validate_sandwich(s);
        vector<pair<int, int>> free;
        for (int u = 0; u < s.n; ++u)
            for (int v = u + 1; v < s.n; ++v)
                if (s.allowed.has_edge(u, v) && ! s.mandatory.has_edge(u, v))
                    free.emplace_back(u, v);
        if (int(free.size()) > brute_force_free_pair_limit)
            throw Error("too many optional pairs for brute force");

        for (unsigned long mask = 0; mask < (1ul << free.size()); ++mask) {
            SimpleGraph e = s.mandatory;
            for (std::size_t i = 0; i < free.size(); ++i)
                if (mask >> i & 1)
                    e.add_edge(free[i].first, free[i].second);
            if (auto f = detail::m_partition(m, e, s.lists))
                return SandwichSolution{ e, *f };
        }
        return std::nullopt;
    }

    inline auto stubborn_matrix() -> StarMatrix { return StarMatrix{ "0*0*", "*0**", "0***", "***1" }; }
    inline auto split_matrix() -> StarMatrix { return StarMatrix{ "0*", "*1" }; }
    inline auto bipartite_matrix() -> StarMatrix { return StarMatrix{ "0*", "*0" }; }
}
