#pragma once

#include <dichro/classify.hpp>
#include <dichro/polymorphism.hpp>
#include <dichro/polysolve.hpp>
#include <dichro/sandwich.hpp>

#include <json.hpp>

namespace dichro
{
    using nlohmann::json;

    inline auto pairs_json(const vector<pair<int, int>> & ps) -> json
    {
        json a = json::array();
        for (auto [u, v] : ps)
            a.push_back({ u, v });
        return a;
    }

    inline auto to_json(const TwoEdgeColouredGraph & h) -> json
    {
        return { { "n", h.size() }, { "blue", pairs_json(edges_of(h, Colour::Blue)) }, { "red", pairs_json(edges_of(h, Colour::Red)) } };
    }

    inline auto to_json(const StarMatrix & m) -> json
    {
        json rows = json::array();
        for (auto & r : m.rows()) {
            json row = json::array();
            for (char c : r)
                row.push_back(string(1, c));
            rows.push_back(row);
        }
        return { { "entries", rows } };
    }

    inline auto to_json(const SimpleGraph & g) -> json { return { { "n", g.size() }, { "edges", pairs_json(g.edges()) } }; }

    namespace detail
    {
        inline auto need(const json & j, const char * key) -> const json &
        {
            if (! j.is_object() || ! j.contains(key))
                throw Error(string("missing field \"") + key + "\"");
            return j.at(key);
        }

        inline auto vertex_count(const json & j) -> int
        {
            auto & n = need(j, "n");
            if (! n.is_number_integer() || n.get<long long>() < 0 || n.get<long long>() > 100000)
                throw Error("\"n\" must be a non-negative integer");
            return n.get<int>();
        }

        inline auto pair_list(const json & j, const char * key, int n, bool optional_field = false) -> vector<pair<int, int>>
        {
            vector<pair<int, int>> out;
            if (optional_field && (! j.is_object() || ! j.contains(key)))
                return out;
            auto & a = need(j, key);
            if (! a.is_array())
                throw Error(string("\"") + key + "\" must be an array of pairs");
            for (auto & p : a) {
                if (! p.is_array() || p.size() != 2 || ! p[0].is_number_integer() || ! p[1].is_number_integer())
                    throw Error(string("\"") + key + "\" must contain integer pairs");
                int u = p[0].get<int>(), v = p[1].get<int>();
                if (u < 0 || v < 0 || u >= n || v >= n)
                    throw Error(string("pair in \"") + key + "\" out of range");
                out.emplace_back(u, v);
            }
            return out;
        }
    }

    inline auto graph_from_json(const json & j) -> TwoEdgeColouredGraph
    {
        int n = detail::vertex_count(j);
        TwoEdgeColouredGraph h(n);
        for (auto [u, v] : detail::pair_list(j, "blue", n, true))
            h.add_blue(u, v);
        for (auto [u, v] : detail::pair_list(j, "red", n, true))
            h.add_red(u, v);
        return h;
    }

    inline auto matrix_from_json(const json & j) -> StarMatrix
    {
        auto & e = detail::need(j, "entries");
        if (! e.is_array())
            throw Error("\"entries\" must be an array of rows");
        vector<string> rows;
        for (auto & r : e) {
            if (! r.is_array())
                throw Error("matrix rows must be arrays");
            string row;
            for (auto & x : r) {
                if (x.is_string() && x.get<string>().size() == 1)
                    row += x.get<string>();
                else if (x.is_number_integer() && (x.get<int>() == 0 || x.get<int>() == 1))
                    row += char('0' + x.get<int>());
                else
                    throw Error("matrix entries must be \"0\", \"1\" or \"*\"");
            }
            rows.push_back(row);
        }
        return StarMatrix(rows);
    }

    inline auto simple_graph_from_json(const json & j) -> SimpleGraph
    {
        int n = detail::vertex_count(j);
        return SimpleGraph(n, detail::pair_list(j, "edges", n));
    }

    inline auto lists_from_json(const json & j, int n, int template_size) -> vector<vector<int>>
    {
        vector<int> all;
        for (int a = 0; a < template_size; ++a)
            all.push_back(a);
        vector<vector<int>> lists(n, all);
        if (! j.is_object())
            throw Error("\"lists\" must be an object keyed by vertex");
        for (auto & [key, value] : j.items()) {
            int v;
            try {
                std::size_t used = 0;
                v = std::stoi(key, &used);
                if (used != key.size())
                    throw Error("");
            }
            catch (const std::exception &) {
                throw Error("list key \"" + key + "\" is not a vertex");
            }
            if (v < 0 || v >= n)
                throw Error("list key \"" + key + "\" out of range");
            if (! value.is_array())
                throw Error("lists must be arrays");
            lists[v].clear();
            for (auto & a : value) {
                if (! a.is_number_integer() || a.get<int>() < 0 || a.get<int>() >= template_size)
                    throw Error("list entry out of range for vertex " + key);
                lists[v].push_back(a.get<int>());
            }
            std::sort(lists[v].begin(), lists[v].end());
            lists[v].erase(std::unique(lists[v].begin(), lists[v].end()), lists[v].end());
        }
        return lists;
    }

    inline auto instance_from_json(const json & j, int template_size) -> ListCspInstance
    {
        auto g = graph_from_json(j);
        auto inst = with_full_lists(g, template_size);
        if (j.contains("lists"))
            inst.lists = lists_from_json(j.at("lists"), g.size(), template_size);
        return inst;
    }

    inline auto sandwich_from_json(const json & j, int template_size) -> SandwichInstance
    {
        SandwichInstance s;
        s.n = detail::vertex_count(j);
        s.mandatory = SimpleGraph(s.n, detail::pair_list(j, "mandatory", s.n));
        s.allowed = SimpleGraph(s.n, detail::pair_list(j, "allowed", s.n));
        if (j.contains("lists"))
            s.lists = lists_from_json(j.at("lists"), s.n, template_size);
        validate_sandwich(s);
        return s;
    }

    inline auto map_json(const vector<int> & f) -> json
    {
        json o = json::object();
        for (std::size_t v = 0; v < f.size(); ++v)
            o[std::to_string(v)] = f[v];
        return o;
    }

    inline auto to_json(const Decomposition & d) -> json
    {
        json blocks = json::array();
        for (auto & b : d.blocks)
            blocks.push_back({ { "kind", kind_name(b.kind) }, { "vertices", b.vertices } });
        return { { "blocks", blocks }, { "base_ok", d.base_ok } };
    }

    inline auto to_json(const Recognition & r) -> json
    {
        json j = { { "decomposition", to_json(r.decomposition) }, { "image", r.image }, { "retraction", r.retraction } };
        if (r.via_core)
            j["via_core"] = true;
        return j;
    }

    inline auto to_json(const RecognizerFailure & f) -> json
    {
        return { { "remaining", f.remaining }, { "minimal_homogeneous_set", f.offending }, { "reason", f.reason } };
    }

    inline auto to_json(const HardnessCertificate & c) -> json
    {
        if (auto * s = std::get_if<StarOddCycle>(&c)) {
            json j = { { "type", s->cycle.size() == 1 ? "star-loop" : "star-odd-cycle" }, { "arena", arena_name(s->arena) },
                       { "cycle", s->cycle } };
            if (s->arena == Arena::Cyclic)
                j["p"] = s->p;
            if (! s->representatives.empty()) {
                json reps = json::array();
                for (auto & t : s->representatives) {
                    string word;
                    for (int x : t)
                        word += std::to_string(x) + (t.size() > 1 && x > 9 ? "," : "");
                    reps.push_back(word);
                }
                j["representatives"] = reps;
            }
            return j;
        }
        if (auto * m = std::get_if<MonoLoopOddCycle>(&c))
            return { { "type", "mono-loop-odd-cycle" }, { "edge_colour", colour_name(m->colour) }, { "cycle", m->cycle } };
        if (auto * p = std::get_if<PatternHom>(&c))
            return { { "type", "pattern-homomorphism" }, { "pattern", p->pattern }, { "map", map_json(p->map) } };
        if (auto * q = std::get_if<PpOddCycle>(&c))
            return { { "type", "pp-odd-cycle" }, { "formula", string("exists z. ") + (q->first == Colour::Red ? "R" : "B") + "(x,z) & " +
                                                                (q->second == Colour::Red ? "R" : "B") + "(z,y)" },
                     { "cycle", q->cycle } };
        return { { "type", "recognizer-reject" }, { "failure", to_json(std::get<RecognizerReject>(c).failure) } };
    }

    inline auto to_json(const Classification & c) -> json
    {
        json j = { { "verdict", verdict_name(c.verdict) } };
        j["decomposition"] = c.tractable ? to_json(c.tractable->decomposition) : json(nullptr);
        if (c.tractable) {
            j["image"] = c.tractable->image;
            j["retraction"] = c.tractable->retraction;
            if (c.tractable->via_core)
                j["via_core"] = true;
        }
        j["certificate"] = c.certificate ? to_json(*c.certificate) : json(nullptr);
        if (c.rejection)
            j["rejection"] = to_json(*c.rejection);
        return j;
    }

    inline auto to_json(const FullHomClassification & c) -> json
    {
        json j = { { "verdict", verdict_name(c.verdict) }, { "point_determining_core", to_json(c.core.graph) },
                   { "contraction", c.core.map }, { "peeled", c.peeled }, { "residue", c.residue } };
        if (c.loopless_check) {
            j["k3_2k2_p4_free"] = c.loopless_check->free;
            if (! c.loopless_check->free)
                j["forbidden"] = { { "type", c.loopless_check->obstruction }, { "vertices", c.loopless_check->witness } };
        }
        return j;
    }

    inline auto to_json(const Polymorphism & f) -> json
    {
        return { { "arity", f.arity }, { "base", f.base }, { "table", f.table } };
    }

    inline auto to_json(const ReductionLog & log) -> json
    {
        json a = json::array();
        for (auto & r : log.records)
            a.push_back({ { "reason", reason_name(r.reason) }, { "vertices", r.vertices }, { "values", r.values } });
        return a;
    }
}
