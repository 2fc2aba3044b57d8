#pragma once

#include <dichro/decompose.hpp>
#include <dichro/homsearch.hpp>
#include <dichro/twosat.hpp>

#include <array>

namespace dichro
{
    class IntractableTemplate : public Error
    {
        public:
            IntractableTemplate() : Error("template NP-complete; pass --oracle") {}
    };

    // Lists that do not survive the retraction of a non-decomposable template.
    class OpenListRegime : public Error
    {
        public:
            OpenListRegime() : Error("list version over a template that is not itself decomposable: open regime, oracle only") {}
    };

    enum class RemovalReason { HomVertex, MonoStarEdge, BiStarEdge };

    inline auto reason_name(RemovalReason r) -> string
    {
        switch (r) {
            case RemovalReason::HomVertex: return "homogeneous-vertex";
            case RemovalReason::MonoStarEdge: return "mono-star-edge";
            case RemovalReason::BiStarEdge: return "bi-star-edge";
        }
        return "";
    }

    struct Removal
    {
        vector<int> vertices;
        vector<int> values;
        RemovalReason reason;
    };

    struct ReductionLog
    {
        vector<Removal> records;
    };

    struct AlternatingReach
    {
        vector<int> vertices; // ascending
        vector<int> parity;   // parity[i] belongs to vertices[i]
    };

    namespace detail
    {
        // Vertices reachable from g by walks whose edge colours alternate,
        // the first edge having colour `first`. *-edges serve as either colour.
        inline auto reach(const TwoEdgeColouredGraph & g, const vector<char> & alive, int start, Colour first) -> vector<int>
        {
            int n = g.size();
            constexpr int unseen = -1;
            vector<std::array<int, 2>> dist(n, { unseen, unseen });
            auto slot = [] (Colour c) { return c == Colour::Red ? 0 : 1; };
            vector<pair<int, Colour>> queue{ { start, other(first) } };
            dist[start][slot(other(first))] = 0;
            for (std::size_t qi = 0; qi < queue.size(); ++qi) {
                auto [u, last] = queue[qi];
                Colour next = other(last);
                for (int w = 0; w < n; ++w)
                    if (w != u && alive[w] && g.has(next, u, w) && dist[w][slot(next)] == unseen) {
                        dist[w][slot(next)] = dist[u][slot(last)] + 1;
                        queue.emplace_back(w, next);
                    }
            }
            vector<int> best(n, unseen);
            for (int v = 0; v < n; ++v)
                for (int d : dist[v])
                    if (d != unseen && (best[v] == unseen || d < best[v]))
                        best[v] = d;
            return best;
        }

        struct Reduction
        {
            const TwoEdgeColouredGraph & g;
            const TwoEdgeColouredGraph & h;
            vector<char> alive;
            vector<Mask> lists;
            ReductionLog log;

            Reduction(const TwoEdgeColouredGraph & g_, const TwoEdgeColouredGraph & h_, vector<Mask> lists_) :
                g(g_), h(h_), alive(g_.size(), 1), lists(std::move(lists_))
            {
            }

            auto remove(const vector<int> & vs, const vector<int> & values, RemovalReason why) -> void
            {
                if (vs.empty())
                    return;
                for (int v : vs)
                    alive[v] = 0;
                log.records.push_back({ vs, values, why });
            }

            auto touches(int u, Colour c) const -> bool
            {
                for (int w = 0; w < g.size(); ++w)
                    if (alive[w] && g.has(c, u, w))
                        return true;
                return false;
            }

            // Algorithm 1.
            auto strip_vertex(int x) -> void
            {
                Colour bad = h.blue(x, x) ? Colour::Red : Colour::Blue;
                vector<int> gone;
                for (int u = 0; u < g.size(); ++u) {
                    if (! alive[u])
                        continue;
                    if (touches(u, bad))
                        lists[u] &= ~bit(x);
                    else if (lists[u] & bit(x))
                        gone.push_back(u);
                }
                remove(gone, vector<int>(gone.size(), x), RemovalReason::HomVertex);
            }

            // Algorithm 2: components are taken in the colour opposite to the loops.
            auto strip_mono(int h1, int h2) -> void
            {
                Colour joins = h.blue(h1, h1) ? Colour::Red : Colour::Blue;
                auto pair_template = induced(h, { h1, h2 });
                vector<char> seen(g.size(), 0);
                for (int s = 0; s < g.size(); ++s) {
                    if (! alive[s] || seen[s])
                        continue;
                    vector<int> comp{ s };
                    seen[s] = 1;
                    for (std::size_t i = 0; i < comp.size(); ++i)
                        for (int w = 0; w < g.size(); ++w)
                            if (alive[w] && ! seen[w] && w != comp[i] && g.has(joins, comp[i], w)) {
                                seen[w] = 1;
                                comp.push_back(w);
                            }
                    std::sort(comp.begin(), comp.end());

                    ListCspInstance sub{ induced(g, comp), vector<vector<int>>(comp.size()) };
                    for (std::size_t i = 0; i < comp.size(); ++i) {
                        if (lists[comp[i]] & bit(h1)) sub.lists[i].push_back(0);
                        if (lists[comp[i]] & bit(h2)) sub.lists[i].push_back(1);
                    }
                    if (auto f = solve_base2(sub, pair_template)) {
                        vector<int> values;
                        for (int x : *f)
                            values.push_back(x == 0 ? h1 : h2);
                        remove(comp, values, RemovalReason::MonoStarEdge);
                    }
                    else
                        for (int v : comp)
                            lists[v] &= ~(bit(h1) | bit(h2));
                }
            }

            // One while-loop of Algorithm 3: `even` has the loop colour other
            // than `first`, `odd` the remaining vertex of the *-edge.
            auto strip_bi_pass(int even, int odd, Colour first) -> void
            {
                while (true) {
                    int start = -1;
                    for (int v = 0; v < g.size(); ++v)
                        if (alive[v] && (lists[v] & bit(even))) {
                            start = v;
                            break;
                        }
                    if (start == -1)
                        return;

                    auto dist = reach(g, alive, start, first);
                    vector<int> members, values;
                    for (int v = 0; v < g.size(); ++v)
                        if (dist[v] >= 0) {
                            members.push_back(v);
                            values.push_back(dist[v] % 2 == 0 ? even : odd);
                        }

                    bool ok = true;
                    for (std::size_t i = 0; i < members.size() && ok; ++i) {
                        ok = lists[members[i]] & bit(values[i]);
                        for (std::size_t j = i; j < members.size() && ok; ++j) {
                            int code = g.code(members[i], members[j]);
                            ok = (h.code(values[i], values[j]) & code) == code;
                        }
                    }
                    if (ok)
                        remove(members, values, RemovalReason::BiStarEdge);
                    else
                        lists[start] &= ~bit(even);
                }
            }

            // Algorithm 3 with h1 blue-looped and h2 red-looped.
            auto strip_bi(int h1, int h2) -> void
            {
                if (! h.blue(h1, h1))
                    std::swap(h1, h2);
                strip_bi_pass(h1, h2, Colour::Red);
                strip_bi_pass(h2, h1, Colour::Blue);
            }

            auto alive_vertices() const -> vector<int>
            {
                vector<int> r;
                for (int v = 0; v < g.size(); ++v)
                    if (alive[v])
                        r.push_back(v);
                return r;
            }
        };

        inline auto masks_of(const ListCspInstance & inst) -> vector<Mask>
        {
            vector<Mask> m(inst.lists.size(), 0);
            for (std::size_t v = 0; v < inst.lists.size(); ++v)
                for (int a : inst.lists[v])
                    m[v] |= bit(a);
            return m;
        }

        inline auto lists_of(const vector<Mask> & masks, const vector<int> & vertices) -> vector<vector<int>>
        {
            vector<vector<int>> l;
            for (int v : vertices) {
                l.emplace_back();
                for (Mask rest = masks[v]; rest; rest &= rest - 1)
                    l.back().push_back(std::countr_zero(rest));
            }
            return l;
        }

        inline auto check_template(const TwoEdgeColouredGraph & h, const ListCspInstance & inst) -> void
        {
            if (h.size() > max_template_size)
                throw Error("solver templates are limited to " + std::to_string(max_template_size) + " vertices");
            validate_instance(inst, h.size());
        }
    }

    inline auto alternating_reach(const TwoEdgeColouredGraph & g, int start, Colour first) -> AlternatingReach
    {
        if (start < 0 || start >= g.size())
            throw Error("start vertex out of range");
        auto dist = detail::reach(g, vector<char>(g.size(), 1), start, first);
        AlternatingReach r;
        for (int v = 0; v < g.size(); ++v)
            if (dist[v] >= 0) {
                r.vertices.push_back(v);
                r.parity.push_back(dist[v] % 2);
            }
        return r;
    }

    // Reduced instance: the surviving vertices renumbered in ascending order.
    struct StripResult
    {
        ListCspInstance reduced;
        vector<int> kept;
        ReductionLog log;
    };

    namespace detail
    {
        template <typename Step>
        auto run_strip(const ListCspInstance & inst, const TwoEdgeColouredGraph & h, Step step) -> StripResult
        {
            check_template(h, inst);
            Reduction r(inst.graph, h, masks_of(inst));
            step(r);
            StripResult out;
            out.kept = r.alive_vertices();
            out.reduced = { induced(inst.graph, out.kept), lists_of(r.lists, out.kept) };
            out.log = r.log;
            return out;
        }
    }

    inline auto strip_homogeneous_vertex(const ListCspInstance & inst, const TwoEdgeColouredGraph & h, int x) -> StripResult
    {
        if (x < 0 || x >= h.size() || ! is_homogeneous(h, { x }))
            throw Error("vertex is not homogeneous in the template");
        if (h.star(x, x) || ! h.adjacent(x, x))
            throw Error("homogeneous vertex needs a single-coloured loop");
        return detail::run_strip(inst, h, [x] (detail::Reduction & r) { r.strip_vertex(x); });
    }

    inline auto strip_mono_star_edge(const ListCspInstance & inst, const TwoEdgeColouredGraph & h, int h1, int h2) -> StripResult
    {
        if (kind_of(h, { std::min(h1, h2), std::max(h1, h2) }) != BlockKind::MonoStarEdgeRed
                && kind_of(h, { std::min(h1, h2), std::max(h1, h2) }) != BlockKind::MonoStarEdgeBlue)
            throw Error("pair is not a monochromatic reflexive *-edge");
        if (! is_homogeneous(h, { h1, h2 }))
            throw Error("*-edge is not homogeneous in the template");
        return detail::run_strip(inst, h, [=] (detail::Reduction & r) { r.strip_mono(h1, h2); });
    }

    inline auto strip_bi_star_edge(const ListCspInstance & inst, const TwoEdgeColouredGraph & h, int h1, int h2) -> StripResult
    {
        if (kind_of(h, { std::min(h1, h2), std::max(h1, h2) }) != BlockKind::BichromaticStarEdge)
            throw Error("pair is not a bichromatic *-edge");
        if (! is_homogeneous(h, { h1, h2 }))
            throw Error("*-edge is not homogeneous in the template");
        return detail::run_strip(inst, h, [=] (detail::Reduction & r) { r.strip_bi(h1, h2); });
    }

    struct SolveTrace
    {
        optional<Homomorphism> witness;
        ReductionLog log;
    };

    // Lists must be closed under the retraction; otherwise the template's
    // list problem is not covered by its decomposition.
    inline auto solve_list_csp_traced(const TwoEdgeColouredGraph & h, const Recognition & rec, const ListCspInstance & inst)
        -> SolveTrace
    {
        detail::check_template(h, inst);
        auto & g = inst.graph;
        int n = g.size();

        vector<char> in_image(h.size(), 0);
        for (int v : rec.image)
            in_image[v] = 1;
        vector<detail::Mask> lists(n, 0);
        for (int v = 0; v < n; ++v) {
            auto & l = inst.lists[v];
            for (int a : l) {
                if (std::find(l.begin(), l.end(), rec.retraction[a]) == l.end())
                    throw OpenListRegime();
                if (in_image[a])
                    lists[v] |= detail::bit(a);
            }
        }

        detail::Reduction r(g, h, lists);
        auto & blocks = rec.decomposition.blocks;
        for (std::size_t i = blocks.size() - 1; i >= 1; --i) {
            auto & b = blocks[i].vertices;
            switch (blocks[i].kind) {
                case BlockKind::SingleBlueLoop:
                case BlockKind::SingleRedLoop: r.strip_vertex(b[0]); break;
                case BlockKind::MonoStarEdgeRed:
                case BlockKind::MonoStarEdgeBlue: r.strip_mono(b[0], b[1]); break;
                case BlockKind::BichromaticStarEdge: r.strip_bi(b[0], b[1]); break;
                default: throw Error("decomposition block cannot be peeled");
            }
        }

        auto & base = blocks[0].vertices;
        auto rest = r.alive_vertices();
        ListCspInstance sub{ induced(g, rest), vector<vector<int>>(rest.size()) };
        for (std::size_t i = 0; i < rest.size(); ++i)
            for (std::size_t k = 0; k < base.size(); ++k)
                if (r.lists[rest[i]] & detail::bit(base[k]))
                    sub.lists[i].push_back(int(k));

        SolveTrace out;
        out.log = r.log;
        auto f = solve_base2(sub, induced(h, base));
        if (! f)
            return out;

        Homomorphism w(n, -1);
        for (std::size_t i = 0; i < rest.size(); ++i)
            w[rest[i]] = base[(*f)[i]];
        for (auto it = r.log.records.rbegin(); it != r.log.records.rend(); ++it)
            for (std::size_t i = 0; i < it->vertices.size(); ++i)
                w[it->vertices[i]] = it->values[i];
        if (! verify_hom(inst, h, w))
            throw std::logic_error("reconstructed witness does not verify");
        out.witness = w;
        return out;
    }

    inline auto solve_list_csp(const TwoEdgeColouredGraph & h, const Recognition & rec, const ListCspInstance & inst)
        -> optional<Homomorphism>
    {
        return solve_list_csp_traced(h, rec, inst).witness;
    }

    inline auto solve_list_csp(const TwoEdgeColouredGraph & h, const ListCspInstance & inst) -> optional<Homomorphism>
    {
        auto rec = recognize_tractable(h);
        if (! rec)
            throw IntractableTemplate();
        return solve_list_csp(h, *rec, inst);
    }
}
