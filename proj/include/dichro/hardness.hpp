#pragma once

#include <dichro/decompose.hpp>
#include <dichro/homsearch.hpp>
#include <dichro/quotient.hpp>

#include <variant>

namespace dichro
{
    enum class Arena { Template, Siggers, Cyclic };

    inline auto arena_name(Arena a) -> string
    {
        return a == Arena::Template ? "H" : a == Arena::Siggers ? "Sig(H)" : "Cyc_p(H)";
    }

    // Odd closed walk of *-edges; length one means a *-loop.
    struct StarOddCycle
    {
        vector<int> cycle;
        Arena arena = Arena::Template;
        int p = 0;                          // arity of the cyclic power
        vector<vector<int>> representatives; // smallest tuple of each cycle class
    };

    // Odd cycle of `colour` edges on vertices whose loops have the other colour.
    struct MonoLoopOddCycle
    {
        vector<int> cycle;
        Colour colour = Colour::Red;
    };

    struct PatternHom
    {
        string pattern;
        Homomorphism map;
    };

    // x ~ y when first(x,z) and second(z,y) for some z, in both directions.
    // Loopless and non-bipartite, this pp-defined graph is NP-hard on its own.
    struct PpOddCycle
    {
        Colour first = Colour::Red;
        Colour second = Colour::Red;
        vector<int> cycle;
    };

    struct RecognizerReject
    {
        RecognizerFailure failure;
    };

    using HardnessCertificate = std::variant<StarOddCycle, MonoLoopOddCycle, PatternHom, PpOddCycle, RecognizerReject>;

    namespace detail
    {
        // An odd cycle in the graph on vertices `allowed` with edges `edge`.
        template <typename Edge>
        auto odd_cycle(int n, const vector<char> & allowed, Edge edge) -> optional<vector<int>>
        {
            vector<int> side(n, -1), parent(n, -1), depth(n, 0);
            for (int s = 0; s < n; ++s) {
                if (! allowed[s] || side[s] != -1)
                    continue;
                side[s] = 0;
                vector<int> queue{ s };
                for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                    int u = queue[qi];
                    for (int w = 0; w < n; ++w) {
                        if (w == u || ! allowed[w] || ! edge(u, w))
                            continue;
                        if (side[w] == -1) {
                            side[w] = 1 - side[u];
                            parent[w] = u;
                            depth[w] = depth[u] + 1;
                            queue.push_back(w);
                        }
                        else if (side[w] == side[u]) {
                            // climb both tree paths to their meeting point
                            vector<int> left{ u }, right{ w };
                            int a = u, b = w;
                            while (a != b) {
                                if (depth[a] >= depth[b]) {
                                    a = parent[a];
                                    left.push_back(a);
                                }
                                else {
                                    b = parent[b];
                                    right.push_back(b);
                                }
                            }
                            right.pop_back();
                            vector<int> cycle(left.rbegin(), left.rend());
                            cycle.insert(cycle.end(), right.begin(), right.end());
                            return cycle;
                        }
                    }
                }
            }
            return std::nullopt;
        }

        inline auto odd_closed(const vector<int> & cycle, const std::function<bool (int, int)> & edge) -> bool
        {
            if (cycle.size() % 2 == 0)
                return false;
            for (std::size_t i = 0; i < cycle.size(); ++i)
                if (! edge(cycle[i], cycle[(i + 1) % cycle.size()]))
                    return false;
            return true;
        }
    }

    inline auto find_star_odd_cycle(const TwoEdgeColouredGraph & h) -> optional<StarOddCycle>
    {
        if (auto loops = star_loops(h); ! loops.empty())
            return StarOddCycle{ { loops[0] }, Arena::Template, 0, {} };
        auto c = detail::odd_cycle(h.size(), vector<char>(h.size(), 1), [&] (int u, int v) { return h.star(u, v); });
        if (! c)
            return std::nullopt;
        return StarOddCycle{ *c, Arena::Template, 0, {} };
    }

    inline auto find_mono_loop_odd_cycle(const TwoEdgeColouredGraph & h) -> optional<MonoLoopOddCycle>
    {
        if (has_star_loop(h))
            throw Error("structure has a *-loop");
        for (auto loop : { Colour::Blue, Colour::Red }) {
            Colour edge = other(loop);
            vector<char> allowed(h.size());
            for (int v = 0; v < h.size(); ++v)
                allowed[v] = h.has(loop, v, v);
            if (auto c = detail::odd_cycle(h.size(), allowed, [&] (int u, int v) { return h.has(edge, u, v); }))
                return MonoLoopOddCycle{ *c, edge };
        }
        return std::nullopt;
    }

    struct Pattern
    {
        string id;
        TwoEdgeColouredGraph graph;
    };

    namespace detail
    {
        // loops: one of 'R', 'B' per vertex; edges given as {u, v, code}
        inline auto build_pattern(const string & loops, std::initializer_list<std::array<int, 3>> edges) -> TwoEdgeColouredGraph
        {
            TwoEdgeColouredGraph h(int(loops.size()));
            for (int v = 0; v < h.size(); ++v)
                h.add(loops[v] == 'R' ? Colour::Red : Colour::Blue, v, v);
            for (auto & e : edges)
                h.set_code(e[0], e[1], e[2]);
            return h;
        }

        constexpr int R = 1, B = 2, S = 3;
    }

    inline auto pattern_3A() -> TwoEdgeColouredGraph { using namespace detail; return build_pattern("RRR", { { 0, 1, B }, { 0, 2, B }, { 1, 2, B } }); }
    inline auto pattern_3B() -> TwoEdgeColouredGraph { using namespace detail; return build_pattern("RRB", { { 0, 1, B }, { 0, 2, B }, { 1, 2, S } }); }
    inline auto pattern_3C() -> TwoEdgeColouredGraph { using namespace detail; return build_pattern("RRB", { { 0, 1, B }, { 1, 2, S }, { 0, 2, R } }); }
    inline auto pattern_4A() -> TwoEdgeColouredGraph
    {
        using namespace detail;
        return build_pattern("BBRR", { { 2, 3, S }, { 0, 1, R }, { 1, 2, R }, { 1, 3, R }, { 0, 2, B }, { 0, 3, B } });
    }
    inline auto pattern_5A() -> TwoEdgeColouredGraph
    {
        using namespace detail;
        return build_pattern("BRRRB", { { 0, 4, B }, { 0, 3, B }, { 1, 2, B }, { 1, 4, B }, { 2, 4, B },
                                        { 0, 1, R }, { 1, 3, R }, { 2, 3, R }, { 3, 4, R }, { 0, 2, R } });
    }
    inline auto pattern_path_red_centre() -> TwoEdgeColouredGraph { using namespace detail; return build_pattern("RBR", { { 0, 1, S }, { 0, 2, S } }); }
    inline auto pattern_path_blue_centre() -> TwoEdgeColouredGraph { using namespace detail; return build_pattern("BRB", { { 0, 1, S }, { 0, 2, S } }); }
    inline auto pattern_H3() -> TwoEdgeColouredGraph { using namespace detail; return build_pattern("RRB", { { 0, 1, B }, { 1, 2, B }, { 0, 2, R } }); }
    inline auto pattern_3D() -> TwoEdgeColouredGraph { using namespace detail; return build_pattern("RRB", { { 0, 1, S }, { 1, 2, B }, { 0, 2, R } }); }
    inline auto pattern_4B() -> TwoEdgeColouredGraph
    {
        using namespace detail;
        return build_pattern("RBRR", { { 2, 3, S }, { 0, 1, R }, { 0, 2, R }, { 1, 2, B }, { 1, 3, B }, { 0, 3, B } });
    }
    inline auto pattern_4C() -> TwoEdgeColouredGraph
    {
        using namespace detail;
        return build_pattern("RBRR", { { 2, 3, S }, { 1, 2, R }, { 1, 3, R }, { 0, 3, R }, { 0, 1, B }, { 0, 2, B } });
    }
    inline auto pattern_4D() -> TwoEdgeColouredGraph
    {
        using namespace detail;
        return build_pattern("RRRB", { { 2, 3, S }, { 0, 2, R }, { 0, 3, R }, { 1, 2, R }, { 0, 1, B }, { 1, 3, B } });
    }

    // Ascending size, figure order, then duals; duals isomorphic to an
    // earlier entry are skipped.
    inline auto pattern_library() -> const vector<Pattern> &
    {
        static const vector<Pattern> library = [] {
            vector<vector<Pattern>> by_size(6);
            auto originals = vector<Pattern>{
                { "3A", pattern_3A() }, { "3B", pattern_3B() }, { "3C", pattern_3C() },
                { "path-red-centre", pattern_path_red_centre() }, { "path-blue-centre", pattern_path_blue_centre() },
                { "H3", pattern_H3() }, { "3D", pattern_3D() },
                { "4A", pattern_4A() }, { "4B", pattern_4B() }, { "4C", pattern_4C() }, { "4D", pattern_4D() },
                { "5A", pattern_5A() } };
            for (auto & p : originals)
                by_size[p.graph.size()].push_back(p);

            vector<Pattern> result;
            vector<string> forms;
            auto add = [&] (const Pattern & p) {
                auto f = canonical_form(p.graph);
                if (std::find(forms.begin(), forms.end(), f) != forms.end())
                    return;
                forms.push_back(f);
                result.push_back(p);
            };
            for (auto & group : by_size) {
                for (auto & p : group)
                    add(p);
                for (auto & p : group)
                    add({ p.id + "-dual", dual(p.graph) });
            }
            return result;
        }();
        return library;
    }

    inline auto find_pattern(const string & id) -> optional<TwoEdgeColouredGraph>
    {
        for (auto & p : pattern_library())
            if (p.id == id)
                return p.graph;
        return std::nullopt;
    }

    inline auto find_pattern_hom(const TwoEdgeColouredGraph & h) -> optional<PatternHom>
    {
        if (! is_reflexive(h))
            throw Error("pattern certificates need a reflexive structure");
        if (has_star_loop(h))
            throw Error("structure has a *-loop");
        for (auto & p : pattern_library())
            if (auto f = find_hom(p.graph, h))
                return PatternHom{ p.id, *f };
        return std::nullopt;
    }

    namespace detail
    {
        inline auto pp_edge(const TwoEdgeColouredGraph & h, Colour first, Colour second, int x, int y) -> bool
        {
            auto walk = [&] (int a, int b) {
                for (int z = 0; z < h.size(); ++z)
                    if (h.has(first, a, z) && h.has(second, z, b))
                        return true;
                return false;
            };
            return walk(x, y) && walk(y, x);
        }
    }

    inline auto find_pp_odd_cycle(const TwoEdgeColouredGraph & h) -> optional<PpOddCycle>
    {
        for (auto first : { Colour::Red, Colour::Blue })
            for (auto second : { Colour::Red, Colour::Blue }) {
                bool loopless = true;
                for (int a = 0; a < h.size() && loopless; ++a)
                    loopless = ! detail::pp_edge(h, first, second, a, a);
                if (! loopless)
                    continue;
                auto c = detail::odd_cycle(h.size(), vector<char>(h.size(), 1),
                                           [&] (int u, int v) { return detail::pp_edge(h, first, second, u, v); });
                if (c)
                    return PpOddCycle{ first, second, *c };
            }
        return std::nullopt;
    }

    constexpr int siggers_certificate_limit = 6;

    inline auto quotient_certificate(const QuotientPower & q, Arena arena, int p) -> optional<StarOddCycle>
    {
        auto c = find_star_odd_cycle(q.graph);
        if (! c)
            return std::nullopt;
        c->arena = arena;
        c->p = p;
        for (int x : c->cycle)
            c->representatives.push_back(q.representative(x));
        return c;
    }

    inline auto siggers_certificate(const TwoEdgeColouredGraph & h) -> optional<StarOddCycle>
    {
        if (has_star_loop(h))
            throw Error("structure has a *-loop");
        if (h.size() > siggers_certificate_limit)
            throw Error("Siggers certificates are limited to " + std::to_string(siggers_certificate_limit) + " vertices");
        return quotient_certificate(siggers_power(h), Arena::Siggers, 4);
    }

    constexpr long long cyclic_certificate_tuple_limit = 50000;

    inline auto cyclic_certificate(const TwoEdgeColouredGraph & h, int p) -> optional<StarOddCycle>
    {
        if (! is_prime(p) || p <= h.size())
            throw Error("cyclic certificates need a prime p larger than |H|");
        if (has_star_loop(h))
            throw Error("structure has a *-loop");
        if (ipow(h.size(), p) > cyclic_certificate_tuple_limit)
            throw Error("cyclic power too large for a certificate");
        return quotient_certificate(cyclic_power(h, p), Arena::Cyclic, p);
    }

    // Rebuilds the arena and re-checks the evidence.
    inline auto verify_certificate(const TwoEdgeColouredGraph & h, const HardnessCertificate & cert) -> bool
    {
        if (auto * s = std::get_if<StarOddCycle>(&cert)) {
            if (s->cycle.empty())
                return false;
            TwoEdgeColouredGraph arena = h;
            optional<QuotientPower> q;
            if (s->arena == Arena::Siggers)
                q = siggers_power(h);
            else if (s->arena == Arena::Cyclic)
                q = cyclic_power(h, s->p);
            if (q) {
                arena = q->graph;
                if (s->representatives.size() != s->cycle.size())
                    return false;
                for (std::size_t i = 0; i < s->cycle.size(); ++i)
                    if (s->cycle[i] < 0 || s->cycle[i] >= arena.size() || q->representative(s->cycle[i]) != s->representatives[i])
                        return false;
            }
            for (int v : s->cycle)
                if (v < 0 || v >= arena.size())
                    return false;
            return detail::odd_closed(s->cycle, [&] (int u, int v) { return arena.star(u, v); });
        }
        if (auto * m = std::get_if<MonoLoopOddCycle>(&cert)) {
            for (int v : m->cycle)
                if (v < 0 || v >= h.size() || ! h.has(other(m->colour), v, v) || h.has(m->colour, v, v))
                    return false;
            return m->cycle.size() >= 3 && detail::odd_closed(m->cycle, [&] (int u, int v) { return u != v && h.has(m->colour, u, v); });
        }
        if (auto * p = std::get_if<PatternHom>(&cert)) {
            auto g = find_pattern(p->pattern);
            return g && verify_hom(*g, h, p->map);
        }
        if (auto * q = std::get_if<PpOddCycle>(&cert)) {
            for (int a = 0; a < h.size(); ++a)
                if (detail::pp_edge(h, q->first, q->second, a, a))
                    return false;
            for (int v : q->cycle)
                if (v < 0 || v >= h.size())
                    return false;
            return detail::odd_closed(q->cycle, [&] (int u, int v) { return detail::pp_edge(h, q->first, q->second, u, v); });
        }
        auto & r = std::get<RecognizerReject>(cert);
        return ! recognize_tractable(h) && recognize(h).failure.remaining == r.failure.remaining;
    }
}
