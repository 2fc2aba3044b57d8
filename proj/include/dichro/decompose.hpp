#pragma once

#include <dichro/graph.hpp>
#include <dichro/homsearch.hpp>
#include <dichro/scc.hpp>
#include <dichro/twosat.hpp>

#include <array>

namespace dichro
{
    enum class BlockKind
    {
        SingleBlueLoop,
        SingleRedLoop,
        StarLoop,
        K2Star,
        DualK2Star,
        MonoStarEdgeRed,
        MonoStarEdgeBlue,
        BichromaticStarEdge,
        FourAlt,
        Other
    };

    inline auto kind_name(BlockKind k) -> string
    {
        switch (k) {
            case BlockKind::SingleBlueLoop: return "single-blue-loop";
            case BlockKind::SingleRedLoop: return "single-red-loop";
            case BlockKind::StarLoop: return "star-loop";
            case BlockKind::K2Star: return "K2*";
            case BlockKind::DualK2Star: return "dual-K2*";
            case BlockKind::MonoStarEdgeRed: return "mono-star-edge-red";
            case BlockKind::MonoStarEdgeBlue: return "mono-star-edge-blue";
            case BlockKind::BichromaticStarEdge: return "bichromatic-star-edge";
            case BlockKind::FourAlt: return "4Alt";
            case BlockKind::Other: return "other";
        }
        return "other";
    }

    struct Block
    {
        vector<int> vertices;
        BlockKind kind = BlockKind::Other;
    };

    // blocks[0] is the base; each later block is homogeneous over the ones before it.
    struct Decomposition
    {
        vector<Block> blocks;
        bool base_ok = false;

        auto vertices() const -> vector<int>
        {
            vector<int> all;
            for (auto & b : blocks)
                all.insert(all.end(), b.vertices.begin(), b.vertices.end());
            std::sort(all.begin(), all.end());
            return all;
        }
    };

    // Loops 0,1 blue and 2,3 red; Alt(4Alt) is the directed cycle 0 3 1 2.
    inline auto four_alt() -> TwoEdgeColouredGraph
    {
        TwoEdgeColouredGraph h(4);
        h.add_blue(0, 0); h.add_blue(1, 1); h.add_red(2, 2); h.add_red(3, 3);
        h.add_blue(0, 1); h.add_blue(0, 2); h.add_blue(1, 3);
        h.add_red(2, 3); h.add_red(0, 3); h.add_red(1, 2);
        return h;
    }

    inline auto kind_of(const TwoEdgeColouredGraph & h, const vector<int> & s) -> BlockKind
    {
        if (s.size() == 1) {
            int c = h.code(s[0], s[0]);
            return c == 3 ? BlockKind::StarLoop : c == 2 ? BlockKind::SingleBlueLoop : c == 1 ? BlockKind::SingleRedLoop : BlockKind::Other;
        }
        if (s.size() == 2) {
            int la = h.code(s[0], s[0]), lb = h.code(s[1], s[1]), e = h.code(s[0], s[1]);
            if (la == 1 && lb == 1 && e == 2) return BlockKind::K2Star;
            if (la == 2 && lb == 2 && e == 1) return BlockKind::DualK2Star;
            if (e == 3 && la == 1 && lb == 1) return BlockKind::MonoStarEdgeRed;
            if (e == 3 && la == 2 && lb == 2) return BlockKind::MonoStarEdgeBlue;
            if (e == 3 && la + lb == 3) return BlockKind::BichromaticStarEdge;
            return BlockKind::Other;
        }
        if (s.size() == 4) {
            static const string plain = canonical_form(four_alt()), swapped = canonical_form(dual(four_alt()));
            auto form = canonical_form(induced(h, s));
            if (form == plain || form == swapped)
                return BlockKind::FourAlt;
        }
        return BlockKind::Other;
    }

    inline auto peelable(BlockKind k) -> bool
    {
        return k == BlockKind::SingleBlueLoop || k == BlockKind::SingleRedLoop || k == BlockKind::MonoStarEdgeRed
            || k == BlockKind::MonoStarEdgeBlue || k == BlockKind::BichromaticStarEdge;
    }

    inline auto tractable_shape(const Decomposition & d) -> bool
    {
        if (d.blocks.empty() || d.blocks[0].vertices.size() > 2)
            return false;
        for (std::size_t i = 1; i < d.blocks.size(); ++i)
            if (! peelable(d.blocks[i].kind))
                return false;
        return true;
    }

    // S homogeneous inside the vertex set `within` (which must contain S).
    inline auto is_homogeneous(const TwoEdgeColouredGraph & h, const vector<int> & within, const vector<int> & s) -> bool
    {
        if (s.empty())
            throw Error("homogeneous set must be nonempty");
        vector<char> in(h.size(), 0);
        for (int x : s)
            in[x] = 1;
        for (int x : within)
            if (! in[x])
                for (int y : s)
                    if (h.code(x, y) != h.code(y, y))
                        return false;
        return true;
    }

    inline auto all_vertices(int n) -> vector<int>
    {
        vector<int> v(n);
        for (int i = 0; i < n; ++i)
            v[i] = i;
        return v;
    }

    inline auto is_homogeneous(const TwoEdgeColouredGraph & h, const vector<int> & s) -> bool
    {
        return is_homogeneous(h, all_vertices(h.size()), s);
    }

    // Smallest homogeneous set inside `within` containing v: keep adding w
    // while some member u sees w in colours other than those of its loop.
    inline auto homogeneous_closure(const TwoEdgeColouredGraph & h, const vector<int> & within, int v) -> vector<int>
    {
        vector<char> in(h.size(), 0);
        vector<int> members{ v };
        in[v] = 1;
        for (std::size_t i = 0; i < members.size(); ++i) {
            int u = members[i];
            for (int w : within)
                if (! in[w] && h.code(u, w) != h.code(u, u)) {
                    in[w] = 1;
                    members.push_back(w);
                }
        }
        std::sort(members.begin(), members.end());
        return members;
    }

    inline auto minimal_homogeneous_set(const TwoEdgeColouredGraph & h, const vector<int> & within) -> vector<int>
    {
        vector<int> best;
        for (int v : within) {
            auto s = homogeneous_closure(h, within, v);
            if (best.empty() || s.size() < best.size())
                best = s;
        }
        return best;
    }

    // Distinct closures ordered by size, then by smallest seed.
    inline auto homogeneous_candidates(const TwoEdgeColouredGraph & h, const vector<int> & within) -> vector<vector<int>>
    {
        vector<vector<int>> out;
        for (int v : within) {
            auto s = homogeneous_closure(h, within, v);
            if (std::find(out.begin(), out.end(), s) == out.end())
                out.push_back(s);
        }
        std::stable_sort(out.begin(), out.end(), [] (auto & a, auto & b) { return a.size() < b.size(); });
        return out;
    }

    inline auto minimal_homogeneous_set(const TwoEdgeColouredGraph & h) -> vector<int>
    {
        require_reflexive_complete(h);
        return minimal_homogeneous_set(h, all_vertices(h.size()));
    }

    struct Recognition
    {
        Decomposition decomposition; // over the ids of the input
        vector<int> image;           // vertices kept by the retraction, ascending
        vector<int> retraction;      // input vertex -> vertex of the image
        bool via_core = false;       // accepted only after computing the exact core
    };

    struct RecognizerFailure
    {
        vector<int> remaining;
        vector<int> offending;
        string reason;
    };

    struct RecognizerOutcome
    {
        optional<Recognition> accepted;
        RecognizerFailure failure;
    };

    // Some T inside r with |T| <= 2 that r retracts onto, with the map.
    // Pairs are only tried when pair_ok accepts the induced kind.
    inline auto small_retract(const TwoEdgeColouredGraph & h, const vector<int> & r,
            const std::function<bool (BlockKind)> & pair_ok = [] (BlockKind) { return true; })
        -> optional<pair<vector<int>, vector<int>>>
    {
        auto sub = induced(h, r);
        int k = sub.size();
        for (int t = 0; t < k; ++t) {
            bool ok = true;
            for (int u = 0; u < k && ok; ++u)
                for (int v = u; v < k && ok; ++v)
                    ok = (sub.code(u, v) & sub.code(t, t)) == sub.code(u, v);
            if (ok)
                return pair{ vector<int>{ r[t] }, vector<int>(k, r[t]) };
        }
        // Without *-loops on the target, whether H[r] retracts onto {t1, t2}
        // depends only on the three codes of the pair: loop colours force the
        // map or it is a parity 2-colouring that the swap of 0 and 1 preserves.
        std::array<char, 64> failed{};
        for (int t1 = 0; t1 < k; ++t1)
            for (int t2 = t1 + 1; t2 < k; ++t2) {
                if (! pair_ok(kind_of(h, { r[t1], r[t2] })))
                    continue;
                int key = sub.code(t1, t1) * 16 + sub.code(t2, t2) * 4 + sub.code(t1, t2);
                bool keyed = sub.code(t1, t1) != 3 && sub.code(t2, t2) != 3;
                if (keyed && failed[key])
                    continue;
                ListCspInstance inst{ sub, vector<vector<int>>(k, vector<int>{ 0, 1 }) };
                inst.lists[t1] = { 0 };
                inst.lists[t2] = { 1 };
                auto f = solve_base2(inst, induced(sub, { t1, t2 }));
                if (! f && keyed)
                    failed[key] = 1;
                if (f) {
                    vector<int> map(k);
                    for (int i = 0; i < k; ++i)
                        map[i] = (*f)[i] == 0 ? r[t1] : r[t2];
                    return pair{ vector<int>{ r[t1], r[t2] }, map };
                }
            }
        return std::nullopt;
    }

    namespace detail
    {
        inline auto recognize_by_peeling(const TwoEdgeColouredGraph & h) -> RecognizerOutcome
        {
            int n = h.size();
            RecognizerOutcome out;

            if (auto loops = star_loops(h); ! loops.empty()) {
                Recognition rec;
                rec.decomposition.blocks.push_back({ { loops[0] }, BlockKind::StarLoop });
                rec.decomposition.base_ok = true;
                rec.image = { loops[0] };
                rec.retraction.assign(n, loops[0]);
                out.accepted = rec;
                return out;
            }

            auto remaining = all_vertices(n);
            auto retraction = all_vertices(n);
            vector<Block> peeled;
            while (! remaining.empty()) {
                auto s = minimal_homogeneous_set(h, remaining);
                if (s.size() != remaining.size()) {
                    // Off the core a non-peelable minimal set can block a peelable one
                    // of the same size, so every proper candidate gets a turn.
                    optional<Block> top;
                    for (auto & c : homogeneous_candidates(h, remaining)) {
                        if (c.size() == remaining.size())
                            break;
                        if (auto kind = kind_of(h, c); peelable(kind)) {
                            top = Block{ c, kind };
                            s = c;
                            break;
                        }
                        // c is homogeneous, so a retraction of H[c] extends by the identity outside c.
                        if (auto small = small_retract(h, c, peelable)) {
                            for (std::size_t i = 0; i < c.size(); ++i)
                                retraction[c[i]] = small->second[i];
                            top = Block{ small->first, kind_of(h, small->first) };
                            s = c;
                            break;
                        }
                    }
                    if (! top) {
                        out.failure = { remaining, s, "no minimal homogeneous set retracts onto a single vertex or a reflexive *-edge" };
                        return out;
                    }
                    peeled.push_back(*top);
                    vector<int> rest;
                    std::set_difference(remaining.begin(), remaining.end(), s.begin(), s.end(), std::back_inserter(rest));
                    remaining = rest;
                    continue;
                }

                auto base = small_retract(h, remaining);
                if (! base) {
                    out.failure = { remaining, s, "core of the remainder has more than two vertices" };
                    return out;
                }
                Recognition rec;
                rec.decomposition.blocks.push_back({ base->first, kind_of(h, base->first) });
                for (auto it = peeled.rbegin(); it != peeled.rend(); ++it)
                    rec.decomposition.blocks.push_back(*it);
                rec.decomposition.base_ok = true;
                for (std::size_t i = 0; i < remaining.size(); ++i)
                    retraction[remaining[i]] = base->second[i];
                rec.retraction = retraction;
                rec.image = rec.decomposition.vertices();
                out.accepted = rec;
                return out;
            }
            out.failure = { {}, {}, "empty structure" };
            return out;
        }
    }

    // Peeling is exact on cores. Off the core it can miss a retraction that
    // lands in an earlier block, so small inputs get a second try on the core.
    inline auto recognize(const TwoEdgeColouredGraph & h) -> RecognizerOutcome
    {
        require_reflexive_complete(h);
        auto out = detail::recognize_by_peeling(h);
        if (out.accepted || h.size() > core_limit)
            return out;
        auto core = core_of(h);
        if (core.graph.size() == h.size())
            return out;
        auto inner = detail::recognize_by_peeling(core.graph);
        if (! inner.accepted)
            return out;

        auto & sub = *inner.accepted;
        Recognition rec;
        rec.via_core = true;
        rec.decomposition = sub.decomposition;
        for (auto & b : rec.decomposition.blocks)
            for (auto & v : b.vertices)
                v = core.vertices[v];
        for (int v : sub.image)
            rec.image.push_back(core.vertices[v]);
        std::sort(rec.image.begin(), rec.image.end());
        for (int v = 0; v < h.size(); ++v)
            rec.retraction.push_back(core.vertices[sub.retraction[core.retraction[v]]]);
        out.accepted = rec;
        return out;
    }

    inline auto recognize_tractable(const TwoEdgeColouredGraph & h) -> optional<Recognition>
    {
        return recognize(h).accepted;
    }

    // The retract as a structure of its own, with the decomposition renumbered.
    inline auto image_structure(const TwoEdgeColouredGraph & h, const Recognition & rec)
        -> pair<TwoEdgeColouredGraph, Decomposition>
    {
        vector<int> index_of(h.size(), -1);
        for (std::size_t i = 0; i < rec.image.size(); ++i)
            index_of[rec.image[i]] = int(i);
        Decomposition d = rec.decomposition;
        for (auto & b : d.blocks)
            for (auto & v : b.vertices)
                v = index_of[v];
        return { induced(h, rec.image), d };
    }

    inline auto alternating_components(const TwoEdgeColouredGraph & h) -> vector<vector<int>>
    {
        return topological_components(alt_digraph(h).arcs);
    }

    inline auto classify_block(const TwoEdgeColouredGraph & h, const vector<int> & a) -> BlockKind
    {
        auto sorted = a;
        std::sort(sorted.begin(), sorted.end());
        auto comps = alternating_components(h);
        if (std::find(comps.begin(), comps.end(), sorted) == comps.end())
            throw Error("vertex set is not an alternating component");
        return kind_of(h, sorted);
    }

    // Blocks partition V(H) and each block is homogeneous over the union of
    // itself and the blocks before it.
    inline auto is_valid_decomposition(const TwoEdgeColouredGraph & h, const Decomposition & d) -> bool
    {
        if (d.vertices() != all_vertices(h.size()))
            return false;
        vector<int> prefix;
        for (auto & b : d.blocks) {
            if (b.vertices.empty())
                return false;
            prefix.insert(prefix.end(), b.vertices.begin(), b.vertices.end());
            if (! is_homogeneous(h, prefix, b.vertices))
                return false;
            if (kind_of(h, b.vertices) != b.kind)
                return false;
        }
        return true;
    }
}
