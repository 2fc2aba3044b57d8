// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <dichro/dichro.hpp>

#include "figures.hpp"
#include "oracles.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>

using namespace dichro;

namespace
{
    using Clock = std::chrono::steady_clock;

    auto seconds_since(Clock::time_point t) -> double
    {
        return std::chrono::duration<double>(Clock::now() - t).count();
    }

    struct Outcome
    {
        bool pass = true;
        string summary;
        vector<string> notes;
    };

    int failures = 0;

    auto report(int id, const string & title, const std::function<Outcome ()> & body) -> void
    {
        auto start = Clock::now();
        Outcome o;
        try {
            o = body();
        }
        catch (const std::exception & e) {
            o = { false, string("threw: ") + e.what(), {} };
        }
        for (auto & n : o.notes)
            std::printf("    %s\n", n.c_str());
        std::printf("%s criterion %d (%s): %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.summary.c_str(),
                    seconds_since(start));
        std::fflush(stdout);
        failures += ! o.pass;
    }

    auto all_classes(int max_n, bool star_loops) -> vector<TwoEdgeColouredGraph>
    {
        vector<TwoEdgeColouredGraph> out;
        for (int n = 1; n <= max_n; ++n)
            for (auto & h : enumerate_reflexive_complete(n, star_loops))
                out.push_back(h);
        return out;
    }

    auto is_listed_certificate(const TwoEdgeColouredGraph & h) -> optional<string>
    {
        if (find_star_odd_cycle(h)) return "*-odd-cycle in H";
        if (find_mono_loop_odd_cycle(h)) return "mono-loop odd cycle";
        if (auto p = find_pattern_hom(h)) return "pattern " + p->pattern;
        if (siggers_certificate(h)) return "*-odd-cycle in Sig(H)";
        int p = smallest_prime_above(h.size());
        if (ipow(h.size(), p) <= cyclic_certificate_tuple_limit && cyclic_certificate(h, p))
            return "*-odd-cycle in Cyc_p(H)";
        return std::nullopt;
    }

    // Closes each list under the retraction so that the polynomial route applies.
    auto closed_lists(oracle::Gen & gen, int n, const Recognition & rec, int k) -> vector<vector<int>>
    {
        auto lists = gen.lists(n, k);
        for (auto & l : lists) {
            for (std::size_t i = 0, m = l.size(); i < m; ++i)
                l.push_back(rec.retraction[l[i]]);
            std::sort(l.begin(), l.end());
            l.erase(std::unique(l.begin(), l.end()), l.end());
        }
        return lists;
    }

    // Every coloured graph on n vertices with cells in base 4 (loops first, then
    // pairs). For n = 4 only representatives that are lexicographically least in
    // their S_n orbit are visited.
    auto for_each_instance(int n, bool orbit_reps, const std::function<void (const TwoEdgeColouredGraph &)> & visit) -> void
    {
        vector<pair<int, int>> cells;
        for (int v = 0; v < n; ++v)
            cells.push_back({ v, v });
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                cells.push_back({ u, v });
        vector<vector<int>> perms;
        vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do
            perms.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));

        auto total = ipow(4, int(cells.size()));
        vector<int> codes(cells.size()), image(cells.size());
        vector<vector<int>> at(n, vector<int>(n));
        for (long long x = 0; x < total; ++x) {
            long long y = x;
            for (std::size_t c = 0; c < cells.size(); ++c, y /= 4) {
                codes[c] = int(y % 4);
                at[cells[c].first][cells[c].second] = at[cells[c].second][cells[c].first] = codes[c];
            }
            if (orbit_reps) {
                bool least = true;
                for (auto & q : perms) {
                    for (std::size_t c = 0; c < cells.size(); ++c)
                        image[c] = at[q[cells[c].first]][q[cells[c].second]];
                    if (std::lexicographical_compare(image.rbegin(), image.rend(), codes.rbegin(), codes.rend())) {
                        least = false;
                        break;
                    }
                }
                if (! least)
                    continue;
            }
            TwoEdgeColouredGraph g(n);
            for (std::size_t c = 0; c < cells.size(); ++c)
                g.set_code(cells[c].first, cells[c].second, codes[c]);
            visit(g);
        }
    }

    auto c1() -> Outcome
    {
        Outcome o;
        int ok = 0;
        double worst = 0;
        for (auto & fig : figures::sig_figures()) {
            auto start = Clock::now();
            auto r = figures::check_figure(fig);
            double t = seconds_since(start);
            worst = std::max(worst, t);
            if (! r.ok || t >= 1.0) {
                o.pass = false;
                o.notes.push_back(fig.pattern + ": " + (r.ok ? "too slow" : r.failure));
            }
            else
                ++ok;
            for (auto & slip : r.tuple_slips)
                o.notes.push_back(fig.pattern + ": drawn pair " + slip + " (class edge holds)");
        }
        char buf[128];
        std::snprintf(buf, sizeof buf, "%d/8 figures reproduced, slowest %.3fs", ok, worst);
        o.summary = buf;
        return o;
    }

    auto c2() -> Outcome
    {
        Outcome o;
        int classes = 0, exceptions = 0, tractable = 0;
        for (auto & h : all_classes(3, true)) {
            ++classes;
            bool accepted = bool(recognize_tractable(h));
            auto core = core_of(h);
            auto s = find_siggers(core.graph, true);
            tractable += accepted;
            if (accepted != (s.status == SearchStatus::Found)) {
                ++exceptions;
                o.notes.push_back(canonical_form(h) + ": recognizer " + (accepted ? "accepts" : "rejects"));
            }
        }
        o.pass = exceptions == 0;
        o.summary = std::to_string(classes) + " classes, " + std::to_string(tractable) + " accepted, " +
                    std::to_string(exceptions) + " exceptions";
        return o;
    }

    auto c3() -> Outcome
    {
        Outcome o;
        int classes = 0, rejected = 0, uncertified = 0, pp_only = 0, no_siggers = 0, accepted_bad = 0;
        std::map<string, int> kinds;
        for (auto & h : all_classes(4, true)) {
            ++classes;
            auto c = classify(h, { false });
            if (c.tractable) {
                auto [image, d] = image_structure(h, *c.tractable);
                bool ok = tractable_shape(d) && is_valid_decomposition(image, d);
                if (ok) {
                    auto [f3, f4] = build_wnu_pair(image, d);
                    ok = verify_polymorphism(image, f3, Wnu | Conservative | Eq1, &f4).ok &&
                         verify_polymorphism(image, f4, Wnu | Conservative).ok;
                }
                if (ok && ! has_star_loop(h))
                    ok = ! siggers_certificate(h);
                if (! ok) {
                    ++accepted_bad;
                    o.notes.push_back(canonical_form(h) + ": accepted but fails the tractable-side checks");
                }
                continue;
            }
            ++rejected;
            if (auto kind = is_listed_certificate(h)) {
                ++kinds[*kind];
                continue;
            }
            ++uncertified;
            bool pp = bool(find_pp_odd_cycle(h));
            pp_only += pp;
            // the verdict itself, independently of certificates
            auto core = core_of(h);
            auto sig = find_siggers(core.graph, true, true);
            string status = sig.status == SearchStatus::Found ? "found" : sig.status == SearchStatus::None ? "none" : "budget";
            no_siggers += sig.status == SearchStatus::None;
            o.notes.push_back(canonical_form(h) + ": rejected, no listed certificate" + (pp ? ", pp-defined odd cycle exists" : "") +
                              ", idempotent Siggers on the core: " + status);
        }
        for (auto & [k, v] : kinds)
            o.notes.push_back("certificate kind " + k + ": " + std::to_string(v));
        o.pass = uncertified == 0 && accepted_bad == 0;
        o.summary = std::to_string(classes) + " classes, " + std::to_string(rejected) + " rejected, " +
                    std::to_string(uncertified) + " rejected without a listed certificate (" + std::to_string(pp_only) +
                    " of them have a pp-defined odd cycle, " + std::to_string(no_siggers) +
                    " provably lack an idempotent Siggers polymorphism on the core), " + std::to_string(accepted_bad) + " accepted-side exceptions";
        return o;
    }

    auto c4() -> Outcome
    {
        Outcome o;
        oracle::Gen gen(2024);
        long long checked = 0, mismatches = 0, bad_witness = 0;
        int templates = 0;
        auto check = [&] (const TwoEdgeColouredGraph & h, const Recognition & rec, const ListCspInstance & inst) {
            auto ours = solve_list_csp(h, rec, inst);
            auto theirs = find_hom(inst, h);
            ++checked;
            if (bool(ours) != bool(theirs)) {
                if (mismatches++ < 10)
                    o.notes.push_back(canonical_form(h) + ": disagreement on an instance with " + std::to_string(inst.graph.size()) + " vertices");
            }
            if (ours && ! verify_hom(inst, h, *ours))
                ++bad_witness;
        };
        for (auto & h : all_classes(4, true)) {
            auto rec = recognize_tractable(h);
            if (! rec)
                continue;
            ++templates;
            int k = h.size();
            for (int n = 1; n <= 4; ++n)
                for_each_instance(n, n == 4, [&] (const TwoEdgeColouredGraph & g) {
                    check(h, *rec, with_full_lists(g, k));
                    check(h, *rec, { g, closed_lists(gen, n, *rec, k) });
                });
            for (int round = 0; round < 500; ++round) {
                int n = 1 + gen.below(8);
                auto g = gen.instance_graph(n);
                check(h, *rec, gen.coin() ? with_full_lists(g, k) : ListCspInstance{ g, closed_lists(gen, n, *rec, k) });
            }
        }
        o.pass = mismatches == 0 && bad_witness == 0;
        o.summary = std::to_string(templates) + " tractable templates, " + std::to_string(checked) + " instances, " +
                    std::to_string(mismatches) + " disagreements, " + std::to_string(bad_witness) + " bad witnesses";
        return o;
    }

    auto c5() -> Outcome
    {
        Outcome o;
        oracle::Gen gen(5150);
        const int target = 1000;
        auto extend = [] (const StripResult & r, const vector<int> & reduced, int n) {
            vector<int> w(n, -1);
            for (std::size_t i = 0; i < r.kept.size(); ++i)
                w[r.kept[i]] = reduced[i];
            for (auto & rec : r.log.records)
                for (std::size_t i = 0; i < rec.vertices.size(); ++i)
                    w[rec.vertices[i]] = rec.values[i];
            return w;
        };
        auto run = [&] (const string & name, auto applicable, auto strip) {
            int applied = 0, wrong = 0, rounds = 0;
            while (applied < target && rounds++ < 200 * target) {
                int k = 2 + gen.below(3);
                auto h = gen.template_graph(k);
                auto site = applicable(h);
                if (! site)
                    continue;
                int n = 1 + gen.below(6);
                ListCspInstance inst{ gen.instance_graph(n), gen.lists(n, k) };
                auto r = strip(inst, h, *site);
                ++applied;
                bool before = bool(oracle::brute_hom(inst.graph, h, inst.lists));
                auto after = oracle::brute_hom(r.reduced.graph, h, r.reduced.lists);
                if (before != bool(after) || (after && ! oracle::is_hom(inst.graph, h, extend(r, *after, n))))
                    ++wrong;
            }
            o.notes.push_back(name + ": " + std::to_string(applied) + " applications, " + std::to_string(wrong) + " violations");
            if (applied < target || wrong)
                o.pass = false;
        };
        auto everything = [] (const TwoEdgeColouredGraph & h) { return all_vertices(h.size()); };
        run("homogeneous vertex", [&] (const TwoEdgeColouredGraph & h) -> optional<int> {
            for (int x = 0; x < h.size(); ++x)
                if (! h.star(x, x) && oracle::homogeneous(h, everything(h), { x }))
                    return x;
            return std::nullopt;
        }, [] (const ListCspInstance & inst, const TwoEdgeColouredGraph & h, int x) { return strip_homogeneous_vertex(inst, h, x); });
        run("monochromatic *-edge", [&] (const TwoEdgeColouredGraph & h) -> optional<pair<int, int>> {
            for (int a = 0; a < h.size(); ++a)
                for (int b = a + 1; b < h.size(); ++b)
                    if (h.star(a, b) && h.code(a, a) == h.code(b, b) && h.code(a, a) != 3 && oracle::homogeneous(h, everything(h), { a, b }))
                        return pair{ a, b };
            return std::nullopt;
        }, [] (const ListCspInstance & inst, const TwoEdgeColouredGraph & h, pair<int, int> p) {
            return strip_mono_star_edge(inst, h, p.first, p.second);
        });
        run("bichromatic *-edge", [&] (const TwoEdgeColouredGraph & h) -> optional<pair<int, int>> {
            for (int a = 0; a < h.size(); ++a)
                for (int b = a + 1; b < h.size(); ++b)
                    if (h.star(a, b) && h.code(a, a) + h.code(b, b) == 3 && oracle::homogeneous(h, everything(h), { a, b }))
                        return pair{ a, b };
            return std::nullopt;
        }, [] (const ListCspInstance & inst, const TwoEdgeColouredGraph & h, pair<int, int> p) {
            return strip_bi_star_edge(inst, h, p.first, p.second);
        });
        o.summary = "three reductions, " + std::to_string(target) + " applicable cases each";
        return o;
    }

    auto c6() -> Outcome
    {
        Outcome o;
        const SimpleGraph k1k2(3, { { 1, 2 } });
        long long graphs = 0, wrong = 0, brute_checked = 0;
        for (int n = 1; n <= 7; ++n) {
            vector<pair<int, int>> pairs;
            for (int u = 0; u < n; ++u)
                for (int v = u + 1; v < n; ++v)
                    pairs.push_back({ u, v });
            for (long long mask = 0; mask < (1LL << pairs.size()); ++mask) {
                SimpleGraph g(n);
                for (std::size_t i = 0; i < pairs.size(); ++i)
                    if (mask >> i & 1)
                        g.add_edge(pairs[i].first, pairs[i].second);
                bool free = is_k3_2k2_p4_free(g).free;
                bool hom = n <= 5 ? oracle::brute_full_hom(g, k1k2) : bool(find_full_hom(g, k1k2));
                brute_checked += n <= 5;
                ++graphs;
                if (free != hom && wrong++ < 10)
                    o.notes.push_back("disagreement on a graph with " + std::to_string(n) + " vertices, mask " + std::to_string(mask));
            }
        }
        o.pass = wrong == 0;
        o.summary = std::to_string(graphs) + " labelled graphs (" + std::to_string(brute_checked) +
                    " against enumeration, the rest against backtracking), " + std::to_string(wrong) + " disagreements";
        return o;
    }

    auto c7() -> Outcome
    {
        Outcome o;
        struct Case { string name; StarMatrix m; bool via_oracle; };
        vector<Case> cases = { { "M_B", bipartite_matrix(), false }, { "M_S", split_matrix(), false },
                               { "stubborn", stubborn_matrix(), false },
                               { "adjacency(K3)", StarMatrix{ "011", "101", "110" }, true } };
        oracle::Gen gen(777);
        long long total = 0, wrong = 0;
        for (auto & c : cases) {
            long long checked = 0, bad = 0;
            auto check = [&] (const SandwichInstance & s) {
                auto ours = solve_sandwich(c.m, s, c.via_oracle);
                auto brute = brute_force_sandwich(c.m, s);
                ++checked;
                if (bool(ours) != bool(brute) || (ours && ! verify_sandwich(c.m, s, *ours)))
                    ++bad;
            };
            for (int n = 0; n <= 5; ++n) {
                vector<pair<int, int>> pairs;
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v)
                        pairs.push_back({ u, v });
                // each pair is absent, optional or mandatory
                for (long long x = 0; x < ipow(3, int(pairs.size())); ++x) {
                    SandwichInstance s{ n, SimpleGraph(n), SimpleGraph(n), std::nullopt };
                    long long y = x;
                    for (auto [u, v] : pairs) {
                        int r = int(y % 3);
                        y /= 3;
                        if (r >= 1) s.allowed.add_edge(u, v);
                        if (r == 2) s.mandatory.add_edge(u, v);
                    }
                    check(s);
                }
            }
            // Random instances keep at most 12 optional pairs so brute force stays cheap.
            for (int round = 0; round < 200; ++round) {
                int n = 1 + gen.below(8);
                SandwichInstance s{ n, SimpleGraph(n), SimpleGraph(n), std::nullopt };
                int optional_pairs = 0;
                for (int u = 0; u < n; ++u)
                    for (int v = u + 1; v < n; ++v) {
                        int r = gen.below(3);
                        if (r == 1 && optional_pairs >= 12)
                            r = 2 * gen.below(2);
                        optional_pairs += r == 1;
                        if (r >= 1) s.allowed.add_edge(u, v);
                        if (r == 2) s.mandatory.add_edge(u, v);
                    }
                check(s);
            }
            o.notes.push_back(c.name + ": " + std::to_string(checked) + " instances, " + std::to_string(bad) + " disagreements");
            total += checked;
            wrong += bad;
        }
        o.pass = wrong == 0;
        o.summary = std::to_string(total) + " instances over four matrices, " + std::to_string(wrong) + " disagreements";
        return o;
    }

    auto c8() -> Outcome
    {
        Outcome o;
        auto expect = [&] (const string & what, Verdict got, Verdict want) {
            bool ok = got == want;
            o.notes.push_back(what + " -> " + verdict_name(got) + (ok ? "" : " (expected " + verdict_name(want) + ")"));
            o.pass = o.pass && ok;
        };
        TwoEdgeColouredGraph a(3);
        a.add_red(0, 0); a.add_blue(1, 1); a.add_blue(2, 2);
        a.add_blue(0, 1); a.add_blue(0, 2); a.add_red(1, 2);
        SimpleGraph k3(3, { { 0, 1 }, { 0, 2 }, { 1, 2 } });
        expect("M_S", classify_matrix(split_matrix()).verdict, Verdict::PolynomialTime);
        expect("example A", classify(a).verdict, Verdict::NPComplete);
        expect("star_encode(K3)", classify(star_encode(k3)).verdict, Verdict::NPComplete);
        expect("P4 full-hom sandwich", classify_fullhom_sandwich(SimpleGraph(4, { { 0, 1 }, { 1, 2 }, { 2, 3 } })).verdict, Verdict::NPComplete);
        expect("K1+K2 full-hom sandwich", classify_fullhom_sandwich(SimpleGraph(3, { { 1, 2 } })).verdict, Verdict::PolynomialTime);
        o.summary = o.pass ? "all five reproduced" : "mismatch";
        return o;
    }

    auto c9() -> Outcome
    {
        Outcome o;
        oracle::Gen gen(9);
        const vector<int> sizes = { 10, 30, 50 };
        const int samples = 5;
        vector<double> times;
        double worst50 = 0;
        for (int n : sizes) {
            double sum = 0;
            for (int i = 0; i < samples; ++i) {
                auto h = gen.template_graph(n);
                auto start = Clock::now();
                classify(h);
                double t = seconds_since(start);
                sum += t;
                if (n == 50)
                    worst50 = std::max(worst50, t);
            }
            times.push_back(std::max(sum / samples, 1e-6));
            char buf[96];
            std::snprintf(buf, sizeof buf, "|H| = %d: mean %.4fs over %d templates", n, sum / samples, samples);
            o.notes.push_back(buf);
        }
        // least-squares slope of log t against log n
        double mx = 0, my = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            mx += std::log(sizes[i]) / sizes.size();
            my += std::log(times[i]) / sizes.size();
        }
        double sxy = 0, sxx = 0;
        for (std::size_t i = 0; i < sizes.size(); ++i) {
            sxy += (std::log(sizes[i]) - mx) * (std::log(times[i]) - my);
            sxx += (std::log(sizes[i]) - mx) * (std::log(sizes[i]) - mx);
        }
        double slope = sxy / sxx;
        o.pass = worst50 < 5.0 && slope <= 4.0;
        char buf[96];
        std::snprintf(buf, sizeof buf, "slowest at 50: %.3fs, log-log slope %.2f", worst50, slope);
        o.summary = buf;
        return o;
    }
}

auto main() -> int
{
    report(1, "figure reproduction", c1);
    report(2, "recognizer vs idempotent Siggers, n <= 3", c2);
    report(3, "internal consistency, n <= 4", c3);
    report(4, "solver vs search", c4);
    report(5, "reduction metamorphics", c5);
    report(6, "full-homomorphism freeness, n <= 7", c6);
    report(7, "sandwich vs brute force", c7);
    report(8, "named classifications", c8);
    report(9, "recognizer scaling", c9);
    std::printf("%d of 9 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
