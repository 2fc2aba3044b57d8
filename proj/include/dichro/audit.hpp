#pragma once

#include <dichro/classify.hpp>
#include <dichro/json_io.hpp>
#include <dichro/polymorphism.hpp>

#include <thread>

namespace dichro
{
    struct AuditException
    {
        string check;
        string detail;
    };

    struct AuditEntry
    {
        string canonical;
        int n = 0;
        Verdict verdict = Verdict::NPComplete;
        string evidence;
        json checks = json::object();
        vector<AuditException> exceptions;
    };

    struct AuditReport
    {
        int max_n = 0;
        vector<AuditEntry> entries;

        auto exception_count() const -> std::size_t
        {
            std::size_t k = 0;
            for (auto & e : entries)
                k += e.exceptions.size();
            return k;
        }
    };

    constexpr int audit_guard = 4;

    struct AuditOptions
    {
        int max_n = 3;
        int jobs = 1;
        bool force = false;
    };

    namespace detail
    {
        inline auto evidence_of(const Classification & c) -> string
        {
            if (c.tractable) {
                string s;
                for (auto & b : c.tractable->decomposition.blocks)
                    s += (s.empty() ? "" : " < ") + kind_name(b.kind);
                return s;
            }
            auto & cert = *c.certificate;
            if (auto * s = std::get_if<StarOddCycle>(&cert))
                return arena_name(s->arena) + (s->cycle.size() == 1 ? " *-loop" : " *-cycle of length " + std::to_string(s->cycle.size()));
            if (auto * m = std::get_if<MonoLoopOddCycle>(&cert))
                return string(colour_name(m->colour)) + " odd cycle of length " + std::to_string(m->cycle.size());
            if (auto * p = std::get_if<PatternHom>(&cert))
                return "pattern " + p->pattern;
            if (auto * q = std::get_if<PpOddCycle>(&cert))
                return "pp-defined odd cycle of length " + std::to_string(q->cycle.size());
            return "recognizer reject only";
        }

        inline auto audit_one(const TwoEdgeColouredGraph & h) -> AuditEntry
        {
            AuditEntry e;
            e.canonical = canonical_form(h);
            e.n = h.size();
            auto fail = [&] (string check, string detail) { e.exceptions.push_back({ std::move(check), std::move(detail) }); };

            auto c = classify(h);
            e.verdict = c.verdict;
            e.evidence = evidence_of(c);
            bool tractable = c.verdict == Verdict::PolynomialTime;

            // Siggers on the core: exhaustive up to 3 vertices, best effort at 4.
            auto core = core_of(h);
            e.checks["core_size"] = core.graph.size();
            if (core.graph.size() <= 4) {
                auto s = find_siggers(core.graph, true, true);
                string status = s.status == SearchStatus::Found ? "found" : s.status == SearchStatus::None ? "none" : "budget";
                e.checks["idempotent_siggers_on_core"] = status;
                if (s.status != SearchStatus::BudgetExceeded && (s.status == SearchStatus::Found) != tractable)
                    fail("siggers", "verdict " + verdict_name(c.verdict) + " but idempotent Siggers " + status);
                if (s.polymorphism && ! verify_polymorphism(core.graph, *s.polymorphism, Siggers | Idempotent).ok)
                    fail("siggers", "returned Siggers table does not verify");
            }

            if (tractable) {
                auto & rec = *c.tractable;
                bool retraction_ok = verify_hom(h, h, rec.retraction);
                for (int v : rec.image)
                    retraction_ok = retraction_ok && rec.retraction[v] == v;
                e.checks["retraction"] = retraction_ok;
                if (! retraction_ok)
                    fail("retraction", "retraction is not a homomorphism fixing the image");

                auto [image, d] = image_structure(h, rec);
                bool shape_ok = tractable_shape(d) && is_valid_decomposition(image, d);
                e.checks["decomposition"] = shape_ok;
                if (! shape_ok)
                    fail("decomposition", "decomposition of the image is invalid");
                else {
                    auto [f3, f4] = build_wnu_pair(image, d);
                    auto r3 = verify_polymorphism(image, f3, Wnu | Conservative | Idempotent | Eq1, &f4);
                    auto r4 = verify_polymorphism(image, f4, Wnu | Conservative | Idempotent);
                    e.checks["wnu_pair"] = r3.ok && r4.ok;
                    if (! r3.ok || ! r4.ok)
                        fail("wnu-pair", r3.ok ? r4.failure : r3.failure);
                }

                if (! has_star_loop(h)) {
                    bool clean = ! find_star_odd_cycle(h) && ! find_mono_loop_odd_cycle(h) && ! siggers_certificate(h);
                    e.checks["no_certificate"] = clean;
                    if (! clean)
                        fail("certificate", "tractable template carries a hardness certificate");
                }
            }
            else {
                auto & cert = *c.certificate;
                bool real = ! std::holds_alternative<RecognizerReject>(cert);
                e.checks["certificate"] = real ? to_json(cert)["type"] : json("none");
                if (! real)
                    fail("no-hardness-certificate", "rejected, but no odd cycle, pattern, quotient or pp-definition certificate exists");
                else if (! verify_certificate(h, cert))
                    fail("certificate", "certificate does not re-verify");
            }

            auto d = classify(dual(h), { false });
            vector<int> reversed(h.size());
            for (int v = 0; v < h.size(); ++v)
                reversed[v] = h.size() - 1 - v;
            auto r = classify(relabel(h, reversed), { false });
            e.checks["dual_invariant"] = d.verdict == c.verdict;
            e.checks["relabel_invariant"] = r.verdict == c.verdict;
            if (d.verdict != c.verdict)
                fail("dual", "dual has verdict " + verdict_name(d.verdict));
            if (r.verdict != c.verdict)
                fail("relabel", "relabelled copy has verdict " + verdict_name(r.verdict));
            return e;
        }
    }

    inline auto run_audit(const AuditOptions & opts) -> AuditReport
    {
        if (opts.max_n < 1)
            throw Error("--max-n must be at least 1");
        if (opts.max_n > audit_guard && ! opts.force)
            throw Error("audits beyond " + std::to_string(audit_guard) + " vertices need --force");
        if (opts.max_n > 5)
            throw Error("enumeration is limited to 5 vertices");

        vector<TwoEdgeColouredGraph> classes;
        for (int n = 1; n <= opts.max_n; ++n)
            for (auto & h : enumerate_reflexive_complete(n, true))
                classes.push_back(h);

        AuditReport report;
        report.max_n = opts.max_n;
        report.entries.resize(classes.size());
        int jobs = std::max(1, std::min<int>(opts.jobs, int(classes.size())));
        vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(jobs);
        for (int j = 0; j < jobs; ++j)
            pool.emplace_back([&, j] {
                try {
                    for (std::size_t i = j; i < classes.size(); i += jobs)
                        report.entries[i] = detail::audit_one(classes[i]);
                }
                catch (...) {
                    errors[j] = std::current_exception();
                }
            });
        for (auto & t : pool)
            t.join();
        for (auto & e : errors)
            if (e)
                std::rethrow_exception(e);
        return report;
    }

    inline auto to_json(const AuditReport & r) -> json
    {
        json classes = json::array(), exceptions = json::array(), per_n = json::object();
        for (auto & e : r.entries) {
            classes.push_back({ { "canonical", e.canonical }, { "n", e.n }, { "verdict", verdict_name(e.verdict) },
                                { "evidence", e.evidence }, { "checks", e.checks } });
            for (auto & x : e.exceptions)
                exceptions.push_back({ { "canonical", e.canonical }, { "check", x.check }, { "detail", x.detail } });
            auto key = std::to_string(e.n);
            if (! per_n.contains(key))
                per_n[key] = { { "classes", 0 }, { "P", 0 }, { "NP-complete", 0 } };
            per_n[key]["classes"] = per_n[key]["classes"].get<int>() + 1;
            per_n[key][verdict_name(e.verdict)] = per_n[key][verdict_name(e.verdict)].get<int>() + 1;
        }
        return { { "max_n", r.max_n }, { "summary", per_n }, { "exceptions", exceptions }, { "classes", classes } };
    }
}
