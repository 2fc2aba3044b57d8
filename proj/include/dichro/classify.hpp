#pragma once

#include <dichro/decompose.hpp>
#include <dichro/hardness.hpp>
#include <dichro/homsearch.hpp>

namespace dichro
{
    enum class Verdict { PolynomialTime, NPComplete };

    inline auto verdict_name(Verdict v) -> string { return v == Verdict::PolynomialTime ? "P" : "NP-complete"; }

    struct Classification
    {
        Verdict verdict = Verdict::NPComplete;
        optional<Recognition> tractable;          // decomposition of the retract, for P
        optional<RecognizerFailure> rejection;    // where the recognizer stopped, for NP-complete
        optional<HardnessCertificate> certificate; // cheapest explanation found, for NP-complete
    };

    struct ClassifyOptions
    {
        bool certificates = true;
        int pattern_limit = 64;   // largest |H| searched for pattern homomorphisms
        int siggers_limit = 6;    // largest |H| for Sig(H)
        long long cyclic_limit = 50000;
    };

    // Cycles in H, pattern homomorphisms, quotient powers, then pp-defined odd cycles.
    inline auto hardness_certificate(const TwoEdgeColouredGraph & h, const ClassifyOptions & opts = {})
        -> optional<HardnessCertificate>
    {
        if (has_star_loop(h))
            return std::nullopt;
        if (auto c = find_star_odd_cycle(h))
            return HardnessCertificate{ *c };
        if (auto c = find_mono_loop_odd_cycle(h))
            return HardnessCertificate{ *c };
        if (h.size() <= opts.pattern_limit)
            if (auto c = find_pattern_hom(h))
                return HardnessCertificate{ *c };
        if (h.size() <= std::min(opts.siggers_limit, siggers_certificate_limit))
            if (auto c = siggers_certificate(h))
                return HardnessCertificate{ *c };
        int p = smallest_prime_above(h.size());
        if (ipow(h.size(), p) <= std::min(opts.cyclic_limit, cyclic_certificate_tuple_limit))
            if (auto c = cyclic_certificate(h, p))
                return HardnessCertificate{ *c };
        if (auto c = find_pp_odd_cycle(h))
            return HardnessCertificate{ *c };
        return std::nullopt;
    }

    inline auto classify(const TwoEdgeColouredGraph & h, const ClassifyOptions & opts = {}) -> Classification
    {
        auto outcome = recognize(h);
        Classification c;
        if (outcome.accepted) {
            c.verdict = Verdict::PolynomialTime;
            c.tractable = outcome.accepted;
            return c;
        }
        c.verdict = Verdict::NPComplete;
        c.rejection = outcome.failure;
        if (opts.certificates)
            c.certificate = hardness_certificate(h, opts);
        if (! c.certificate)
            c.certificate = HardnessCertificate{ RecognizerReject{ outcome.failure } };
        return c;
    }

    inline auto classify_matrix(const StarMatrix & m, const ClassifyOptions & opts = {}) -> Classification
    {
        return classify(from_matrix(m), opts);
    }

    inline auto adjacency_matrix(const SimpleGraph & g) -> StarMatrix
    {
        StarMatrix m(g.size());
        for (int i = 0; i < g.size(); ++i)
            for (int j = i; j < g.size(); ++j)
                m.set(i, j, g.has_edge(i, j) ? Entry::One : Entry::Zero);
        return m;
    }

    struct Contraction
    {
        SimpleGraph graph;
        vector<int> map; // input vertex -> vertex of the contracted graph
    };

    // Twins agree on every vertex other than themselves, on their loops, and
    // are adjacent exactly when they are looped.
    inline auto are_twins(const SimpleGraph & g, const vector<int> & alive, int u, int v) -> bool
    {
        if (g.has_loop(u) != g.has_loop(v) || g.has_edge(u, v) != g.has_loop(u))
            return false;
        for (int w : alive)
            if (w != u && w != v && g.has_edge(u, w) != g.has_edge(v, w))
                return false;
        return true;
    }

    inline auto point_determining_core(const SimpleGraph & g) -> Contraction
    {
        int n = g.size();
        auto alive = all_vertices(n);
        vector<int> to(n);
        for (int v = 0; v < n; ++v)
            to[v] = v;

        bool merged = true;
        while (merged) {
            merged = false;
            for (std::size_t i = 0; i < alive.size() && ! merged; ++i)
                for (std::size_t j = i + 1; j < alive.size() && ! merged; ++j)
                    if (are_twins(g, alive, alive[i], alive[j])) {
                        int keep = alive[i], drop = alive[j];
                        for (auto & t : to)
                            if (t == drop)
                                t = keep;
                        alive.erase(alive.begin() + long(j));
                        merged = true;
                    }
        }

        Contraction c{ SimpleGraph(int(alive.size())), vector<int>(n) };
        vector<int> index_of(n, -1);
        for (std::size_t i = 0; i < alive.size(); ++i)
            index_of[alive[i]] = int(i);
        for (std::size_t i = 0; i < alive.size(); ++i)
            for (std::size_t j = i; j < alive.size(); ++j)
                if (g.has_edge(alive[i], alive[j]))
                    c.graph.add_edge(int(i), int(j));
        for (int v = 0; v < n; ++v)
            c.map[v] = index_of[to[v]];
        return c;
    }

    struct FreenessResult
    {
        bool free = true;
        vector<int> witness;  // vertices of an induced K3, 2K2 or P4
        string obstruction;
    };

    inline auto is_k3_2k2_p4_free(const SimpleGraph & g) -> FreenessResult
    {
        if (! g.loopless())
            throw Error("freeness test needs a loopless graph");
        int n = g.size();
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    if (g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c))
                        return { false, { a, b, c }, "K3" };
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                for (int c = b + 1; c < n; ++c)
                    for (int d = c + 1; d < n; ++d) {
                        int q[4] = { a, b, c, d }, deg[4] = { 0, 0, 0, 0 }, edges = 0;
                        for (int i = 0; i < 4; ++i)
                            for (int j = i + 1; j < 4; ++j)
                                if (g.has_edge(q[i], q[j])) {
                                    ++deg[i];
                                    ++deg[j];
                                    ++edges;
                                }
                        std::sort(deg, deg + 4);
                        // no triangle here, so 2 edges of degree 1 each is 2K2 and 3 edges 1,1,2,2 is P4
                        if (edges == 2 && deg[0] == 1)
                            return { false, { a, b, c, d }, "2K2" };
                        if (edges == 3 && deg[0] == 1 && deg[1] == 1 && deg[2] == 2)
                            return { false, { a, b, c, d }, "P4" };
                    }
        return {};
    }

    struct FullHomClassification
    {
        Verdict verdict = Verdict::NPComplete;
        Contraction core;
        vector<int> peeled;   // core vertices in removal order
        vector<int> residue;  // core vertices left over
        optional<FreenessResult> loopless_check;
    };

    inline auto residue_is_base(const SimpleGraph & g, const vector<int> & r) -> bool
    {
        if (r.size() <= 1)
            return true;
        if (r.size() != 2)
            return false;
        int a = r[0], b = r[1];
        bool two_loops = g.has_loop(a) && g.has_loop(b) && ! g.has_edge(a, b);
        bool k2 = ! g.has_loop(a) && ! g.has_loop(b) && g.has_edge(a, b);
        return two_loops || k2;
    }

    inline auto removable(const SimpleGraph & g, const vector<int> & alive, int v) -> bool
    {
        if (! g.has_loop(v)) {
            for (int w : alive)
                if (g.has_edge(v, w))
                    return false;
            return true;
        }
        for (int w : alive)
            if (! g.has_edge(v, w))
                return false;
        return true;
    }

    inline auto classify_fullhom_sandwich(const SimpleGraph & h) -> FullHomClassification
    {
        FullHomClassification out;
        out.core = point_determining_core(h);
        auto & g = out.core.graph;
        auto alive = all_vertices(g.size());
        while (! residue_is_base(g, alive)) {
            auto it = std::find_if(alive.begin(), alive.end(), [&] (int v) { return removable(g, alive, v); });
            if (it == alive.end())
                break;
            out.peeled.push_back(*it);
            alive.erase(it);
        }
        out.residue = alive;
        out.verdict = residue_is_base(g, alive) ? Verdict::PolynomialTime : Verdict::NPComplete;
        if (h.loopless()) {
            out.loopless_check = is_k3_2k2_p4_free(h);
            if (out.loopless_check->free != (out.verdict == Verdict::PolynomialTime))
                throw std::logic_error("full-homomorphism peeling disagrees with the forbidden-subgraph test");
        }
        return out;
    }

    // Lists pushed through a full homomorphism f of templates g -> h.
    inline auto shrink_lists_via_fullhom(const TwoEdgeColouredGraph & g, const TwoEdgeColouredGraph & h,
            const vector<int> & f, const ListCspInstance & inst) -> ListCspInstance
    {
        bool ok = int(f.size()) == g.size();
        for (int u = 0; u < g.size() && ok; ++u)
            for (int v = u; v < g.size() && ok; ++v)
                ok = f[u] >= 0 && f[u] < h.size() && f[v] >= 0 && f[v] < h.size() && g.code(u, v) == h.code(f[u], f[v]);
        if (! ok)
            throw Error("map is not a full homomorphism");
        validate_instance(inst, g.size());
        ListCspInstance out{ inst.graph, {} };
        for (auto & l : inst.lists) {
            vector<int> image;
            for (int a : l)
                image.push_back(f[a]);
            std::sort(image.begin(), image.end());
            image.erase(std::unique(image.begin(), image.end()), image.end());
            out.lists.push_back(image);
        }
        return out;
    }
}
