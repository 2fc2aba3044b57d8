#pragma once

#include <dichro/audit.hpp>
#include <dichro/dichro.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace dichro::cli
{
    enum Exit : int { Ok = 0, No = 1, InputError = 2, Intractable = 3 };

    struct Options
    {
        string format = "json";
        bool oracle = false;
        bool as_matrix = false;
        bool as_graph = false;
    };

    // A path, or the JSON text itself when it starts with '{'.
    inline auto load_json(const string & source) -> json
    {
        string text;
        auto first = source.find_first_not_of(" \t\r\n");
        if (first != string::npos && source[first] == '{')
            text = source;
        else {
            std::ifstream in(source);
            if (! in)
                throw Error("cannot read " + source);
            std::stringstream ss;
            ss << in.rdbuf();
            text = ss.str();
        }
        try {
            return json::parse(text);
        }
        catch (const json::parse_error & e) {
            throw Error("malformed JSON in " + (text == source ? string("inline input") : source) + ": " + e.what());
        }
    }

    // Templates are either coloured graphs or matrices; "entries" decides
    // unless the caller forces one reading.
    inline auto load_template(const json & j, const Options & o) -> TwoEdgeColouredGraph
    {
        bool matrix = o.as_matrix || (! o.as_graph && j.is_object() && j.contains("entries"));
        auto h = matrix ? from_matrix(matrix_from_json(j)) : graph_from_json(j);
        require_reflexive_complete(h);
        return h;
    }

    inline auto text_list(const vector<int> & v) -> string
    {
        string s = "{";
        for (std::size_t i = 0; i < v.size(); ++i)
            s += (i ? "," : "") + std::to_string(v[i]);
        return s + "}";
    }

    inline auto text_classification(const json & j) -> string
    {
        std::ostringstream out;
        out << "verdict: " << j["verdict"].get<string>() << "\n";
        if (! j["decomposition"].is_null())
            for (auto & b : j["decomposition"]["blocks"])
                out << "  block " << b["kind"].get<string>() << " " << text_list(b["vertices"].get<vector<int>>()) << "\n";
        if (! j["certificate"].is_null())
            out << "certificate: " << j["certificate"].dump() << "\n";
        return out.str();
    }

    inline auto emit(std::ostream & out, const Options & o, const json & j, const std::function<string ()> & text) -> void
    {
        if (o.format == "text")
            out << text();
        else
            out << j.dump(2) << "\n";
    }

    inline auto witness_text(const json & j) -> string
    {
        std::ostringstream out;
        out << "satisfiable: " << (j["satisfiable"].get<bool>() ? "yes" : "no") << "\n";
        if (j.contains("witness") && ! j["witness"].is_null())
            for (auto & [v, a] : j["witness"].items())
                out << "  " << v << " -> " << a.get<int>() << "\n";
        return out.str();
    }

    inline auto cmd_classify(const string & input, const Options & o, std::ostream & out) -> int
    {
        auto j = load_json(input);
        auto h = load_template(j, o);
        auto c = to_json(classify(h));
        emit(out, o, c, [&] { return text_classification(c); });
        return Ok;
    }

    inline auto cmd_solve(const string & tpath, const string & ipath, const string & lists_path, const Options & o,
            std::ostream & out) -> int
    {
        auto h = load_template(load_json(tpath), o);
        auto inst = instance_from_json(load_json(ipath), h.size());
        if (! lists_path.empty()) {
            auto l = load_json(lists_path);
            inst.lists = lists_from_json(l.contains("lists") ? l.at("lists") : l, inst.graph.size(), h.size());
        }
        validate_instance(inst, h.size());

        optional<Homomorphism> f;
        string route = "polynomial";
        auto rec = recognize_tractable(h);
        bool fallback = false;
        try {
            if (! rec)
                throw IntractableTemplate();
            f = solve_list_csp(h, *rec, inst);
        }
        catch (const IntractableTemplate &) {
            if (! o.oracle)
                throw;
            fallback = true;
        }
        catch (const OpenListRegime &) {
            if (! o.oracle)
                throw;
            fallback = true;
        }
        if (fallback) {
            route = "oracle";
            f = find_hom(inst, h);
        }
        json j = { { "satisfiable", f.has_value() }, { "witness", f ? map_json(*f) : json(nullptr) }, { "route", route } };
        emit(out, o, j, [&] { return witness_text(j); });
        return f ? Ok : No;
    }

    inline auto cmd_sandwich(const string & mpath, const string & ipath, const Options & o, std::ostream & out) -> int
    {
        auto m = matrix_from_json(load_json(mpath));
        auto s = sandwich_from_json(load_json(ipath), m.size());
        auto sol = solve_list_sandwich(m, s, o.oracle);
        json j = { { "satisfiable", sol.has_value() } };
        j["edges"] = sol ? pairs_json(sol->edges.edges()) : json(nullptr);
        j["partition"] = sol ? map_json(sol->partition) : json(nullptr);
        emit(out, o, j, [&] {
            string t = string("satisfiable: ") + (sol ? "yes" : "no") + "\n";
            if (sol)
                for (auto [u, v] : sol->edges.edges())
                    t += "  edge " + std::to_string(u) + "-" + std::to_string(v) + "\n";
            return t;
        });
        return sol ? Ok : No;
    }

    inline auto cmd_fullhom(const string & input, const Options & o, std::ostream & out) -> int
    {
        auto g = simple_graph_from_json(load_json(input));
        auto c = to_json(classify_fullhom_sandwich(g));
        emit(out, o, c, [&] {
            return "verdict: " + c["verdict"].get<string>() + "\npeeled: " + text_list(c["peeled"].get<vector<int>>()) +
                   "\nresidue: " + text_list(c["residue"].get<vector<int>>()) + "\n";
        });
        return Ok;
    }

    // Every certificate kind that applies, cheapest first, each re-verified.
    inline auto cmd_certify(const string & input, const Options & o, std::ostream & out) -> int
    {
        auto h = load_template(load_json(input), o);
        auto c = classify(h);
        vector<HardnessCertificate> found;
        if (! has_star_loop(h)) {
            if (auto x = find_star_odd_cycle(h)) found.push_back(*x);
            if (auto x = find_mono_loop_odd_cycle(h)) found.push_back(*x);
            if (h.size() <= max_template_size)
                if (auto x = find_pattern_hom(h)) found.push_back(*x);
            if (h.size() <= siggers_certificate_limit)
                if (auto x = siggers_certificate(h)) found.push_back(*x);
            int p = smallest_prime_above(h.size());
            if (ipow(h.size(), p) <= cyclic_certificate_tuple_limit)
                if (auto x = cyclic_certificate(h, p)) found.push_back(*x);
            if (auto x = find_pp_odd_cycle(h)) found.push_back(*x);
        }
        json certs = json::array();
        for (auto & x : found) {
            auto j = to_json(x);
            j["verified"] = verify_certificate(h, x);
            certs.push_back(j);
        }
        json j = { { "verdict", verdict_name(c.verdict) }, { "certificates", certs } };
        if (c.rejection)
            j["rejection"] = to_json(*c.rejection);
        emit(out, o, j, [&] {
            string t = "verdict: " + j["verdict"].get<string>() + "\n";
            for (auto & x : certs)
                t += "certificate: " + x.dump() + "\n";
            return t;
        });
        return Ok;
    }

    inline auto cmd_core(const string & input, const Options & o, std::ostream & out) -> int
    {
        auto h = load_template(load_json(input), o);
        auto c = core_of(h);
        json j = { { "core", to_json(c.graph) }, { "vertices", c.vertices }, { "retraction", c.retraction } };
        emit(out, o, j, [&] { return "core vertices: " + text_list(c.vertices) + "\n"; });
        return Ok;
    }

    inline auto cmd_decompose(const string & input, const Options & o, std::ostream & out) -> int
    {
        auto h = load_template(load_json(input), o);
        auto r = recognize(h);
        json comps = json::array();
        for (auto & a : alternating_components(h))
            comps.push_back({ { "vertices", a }, { "kind", kind_name(kind_of(h, a)) } });
        json j = { { "tractable", r.accepted.has_value() }, { "alternating_components", comps } };
        if (r.accepted)
            j["recognition"] = to_json(*r.accepted);
        else
            j["failure"] = to_json(r.failure);
        emit(out, o, j, [&] {
            string t = string("tractable: ") + (r.accepted ? "yes" : "no") + "\n";
            if (r.accepted)
                for (auto & b : r.accepted->decomposition.blocks)
                    t += "  block " + kind_name(b.kind) + " " + text_list(b.vertices) + "\n";
            else
                t += "  " + r.failure.reason + "\n";
            return t;
        });
        return Ok;
    }

    inline auto cmd_audit(const AuditOptions & a, const string & output, const Options & o, std::ostream & out) -> int
    {
        auto report = run_audit(a);
        auto j = to_json(report);
        if (! output.empty()) {
            std::ofstream f(output);
            if (! f)
                throw Error("cannot write " + output);
            f << j.dump(2) << "\n";
        }
        emit(out, o, output.empty() ? j : json{ { "max_n", j["max_n"] }, { "summary", j["summary"] }, { "exceptions", j["exceptions"] } },
             [&] {
                 std::ostringstream t;
                 for (auto & [n, s] : j["summary"].items())
                     t << "n=" << n << ": " << s["classes"] << " classes, " << s["P"] << " P, " << s["NP-complete"] << " NP-complete\n";
                 t << "exceptions: " << report.exception_count() << "\n";
                 for (auto & x : j["exceptions"])
                     t << "  " << x["canonical"].get<string>() << " " << x["check"].get<string>() << ": " << x["detail"].get<string>() << "\n";
                 return t.str();
             });
        return report.exception_count() == 0 ? Ok : No;
    }

    // Output is buffered so that a failing command never leaves partial JSON behind.
    inline auto run(int argc, const char * const * argv, std::ostream & out, std::ostream & err) -> int
    {
        CLI::App app{ "Dichotomy classifier for reflexive complete 2-edge-coloured graphs" };
        app.require_subcommand(1);
        app.fallthrough();
        Options o;
        app.add_option("--format", o.format, "output format")->check(CLI::IsMember({ "json", "text" }));
        app.add_flag("--oracle", o.oracle, "allow exponential fallbacks");
        auto kind = [&] (CLI::App * sub) {
            auto m = sub->add_flag("--matrix", o.as_matrix, "read the template as a matrix");
            auto g = sub->add_flag("--graph", o.as_graph, "read the template as a coloured graph");
            m->excludes(g);
        };

        string a, b, lists, output;
        auto classify_cmd = app.add_subcommand("classify", "classify a template or matrix");
        classify_cmd->add_option("input", a, "path or inline JSON")->required();
        kind(classify_cmd);

        auto solve_cmd = app.add_subcommand("solve", "solve a (list) CSP instance");
        solve_cmd->add_option("template", a)->required();
        solve_cmd->add_option("instance", b)->required();
        solve_cmd->add_option("--lists", lists, "lists file, {\"0\": [..], ...}");
        solve_cmd->add_flag("--oracle", o.oracle, "allow exponential fallbacks");
        kind(solve_cmd);

        auto sandwich_cmd = app.add_subcommand("sandwich", "solve a sandwich instance for a matrix");
        sandwich_cmd->add_option("matrix", a)->required();
        sandwich_cmd->add_option("instance", b)->required();
        sandwich_cmd->add_flag("--oracle", o.oracle, "allow exponential fallbacks");

        auto fullhom_cmd = app.add_subcommand("fullhom", "classify the full-homomorphism sandwich problem of a graph");
        fullhom_cmd->add_option("graph", a)->required();

        auto certify_cmd = app.add_subcommand("certify", "hardness certificate for a template");
        certify_cmd->add_option("input", a)->required();
        kind(certify_cmd);

        auto core_cmd = app.add_subcommand("core", "core of a template");
        core_cmd->add_option("input", a)->required();
        kind(core_cmd);

        auto decompose_cmd = app.add_subcommand("decompose", "recognizer trace and alternating components");
        decompose_cmd->add_option("input", a)->required();
        kind(decompose_cmd);

        AuditOptions audit;
        auto audit_cmd = app.add_subcommand("audit", "exhaustive audit up to isomorphism");
        audit_cmd->add_option("--max-n", audit.max_n, "largest template size");
        audit_cmd->add_option("--jobs", audit.jobs, "worker threads")->check(CLI::PositiveNumber);
        audit_cmd->add_flag("--force", audit.force, "allow sizes beyond the guard");
        audit_cmd->add_option("--output", output, "write the full report here");

        try {
            app.parse(argc, argv);
        }
        catch (const CLI::ParseError & e) {
            std::ostringstream o_out, o_err;
            int code = app.exit(e, o_out, o_err);
            out << o_out.str();
            err << o_err.str();
            return code == 0 ? Ok : InputError;
        }

        std::ostringstream buffer;
        try {
            int code = Ok;
            if (*classify_cmd) code = cmd_classify(a, o, buffer);
            else if (*solve_cmd) code = cmd_solve(a, b, lists, o, buffer);
            else if (*sandwich_cmd) code = cmd_sandwich(a, b, o, buffer);
            else if (*fullhom_cmd) code = cmd_fullhom(a, o, buffer);
            else if (*certify_cmd) code = cmd_certify(a, o, buffer);
            else if (*core_cmd) code = cmd_core(a, o, buffer);
            else if (*decompose_cmd) code = cmd_decompose(a, o, buffer);
            else if (*audit_cmd) code = cmd_audit(audit, output, o, buffer);
            out << buffer.str();
            return code;
        }
        catch (const IntractableTemplate & e) {
            err << e.what() << "\n";
            return Intractable;
        }
        catch (const RequiresOracle & e) {
            err << e.what() << "\n";
            return Intractable;
        }
        catch (const OpenListRegime & e) {
            err << e.what() << "; pass --oracle\n";
            return Intractable;
        }
        catch (const Error & e) {
            err << "error: " << e.what() << "\n";
            return InputError;
        }
        catch (const json::exception & e) {
            err << "error: " << e.what() << "\n";
            return InputError;
        }
    }
}
