#pragma once

#include <dichro/graph.hpp>

#include <bit>
#include <functional>
#include <optional>

namespace dichro
{
    using std::optional;

    struct ListCspInstance
    {
        TwoEdgeColouredGraph graph;
        vector<vector<int>> lists;
    };

    using Homomorphism = vector<int>;

    inline auto with_full_lists(const TwoEdgeColouredGraph & g, int template_size) -> ListCspInstance
    {
        vector<int> all(template_size);
        for (int i = 0; i < template_size; ++i)
            all[i] = i;
        return { g, vector<vector<int>>(g.size(), all) };
    }

    inline auto validate_instance(const ListCspInstance & inst, int template_size) -> void
    {
        if (int(inst.lists.size()) != inst.graph.size())
            throw Error("instance needs one list per vertex");
        for (auto & l : inst.lists)
            for (int a : l)
                if (a < 0 || a >= template_size)
                    throw Error("list entry " + std::to_string(a) + " is not a template vertex");
    }

    // Every colour on uv must be present on f(u)f(v); loops included.
    inline auto verify_hom(const TwoEdgeColouredGraph & g, const TwoEdgeColouredGraph & h, const Homomorphism & f) -> bool
    {
        if (int(f.size()) != g.size())
            return false;
        for (int x : f)
            if (x < 0 || x >= h.size())
                return false;
        for (int u = 0; u < g.size(); ++u)
            for (int v = u; v < g.size(); ++v) {
                if (g.red(u, v) && ! h.red(f[u], f[v])) return false;
                if (g.blue(u, v) && ! h.blue(f[u], f[v])) return false;
            }
        return true;
    }

    inline auto verify_hom(const ListCspInstance & inst, const TwoEdgeColouredGraph & h, const Homomorphism & f) -> bool
    {
        if (! verify_hom(inst.graph, h, f))
            return false;
        for (int v = 0; v < inst.graph.size(); ++v)
            if (std::find(inst.lists[v].begin(), inst.lists[v].end(), f[v]) == inst.lists[v].end())
                return false;
        return true;
    }

    enum class SearchStatus { Found, None, BudgetExceeded };

    struct SearchResult
    {
        SearchStatus status = SearchStatus::None;
        Homomorphism map;
        unsigned long long nodes = 0;
    };

    constexpr int max_template_size = 64;

    namespace detail
    {
        using Mask = std::uint64_t;

        inline auto bit(int a) -> Mask { return Mask(1) << a; }

        // Backtracking with arc consistency over 64-bit domains.
        class HomSearcher
        {
            private:
                int _n;
                vector<vector<pair<int, int>>> _nbrs; // (neighbour, edge code)
                Mask _support[4][max_template_size];
                unsigned long long _limit, _nodes = 0;
                bool _aborted = false;
                vector<int> _queue;
                vector<char> _queued;

            public:
                vector<Mask> initial;

                HomSearcher(const ListCspInstance & inst, const TwoEdgeColouredGraph & h, unsigned long long limit) :
                    _n(inst.graph.size()), _nbrs(_n), _limit(limit), _queued(_n, 0), initial(_n, 0)
                {
                    int m = h.size();
                    if (m > max_template_size)
                        throw Error("template larger than " + std::to_string(max_template_size) + " vertices");
                    validate_instance(inst, m);

                    Mask all = m == 64 ? ~Mask(0) : bit(m) - 1;
                    for (int a = 0; a < m; ++a) {
                        Mask nr = 0, nb = 0;
                        for (int b = 0; b < m; ++b) {
                            if (h.red(a, b)) nr |= bit(b);
                            if (h.blue(a, b)) nb |= bit(b);
                        }
                        _support[0][a] = all;
                        _support[1][a] = nr;
                        _support[2][a] = nb;
                        _support[3][a] = nr & nb;
                    }

                    Mask red_loops = 0, blue_loops = 0;
                    for (int a = 0; a < m; ++a) {
                        if (h.red(a, a)) red_loops |= bit(a);
                        if (h.blue(a, a)) blue_loops |= bit(a);
                    }

                    auto & g = inst.graph;
                    for (int v = 0; v < _n; ++v) {
                        for (int a : inst.lists[v])
                            initial[v] |= bit(a);
                        if (g.red(v, v)) initial[v] &= red_loops;
                        if (g.blue(v, v)) initial[v] &= blue_loops;
                        for (int w = 0; w < _n; ++w)
                            if (w != v && g.code(v, w) != 0)
                                _nbrs[v].emplace_back(w, g.code(v, w));
                    }
                }

                auto nodes() const -> unsigned long long { return _nodes; }
                auto aborted() const -> bool { return _aborted; }

                // Establish arc consistency starting from the queued variables.
                auto propagate(vector<Mask> & dom) -> bool
                {
                    for (std::size_t qi = 0; qi < _queue.size(); ++qi) {
                        int w = _queue[qi];
                        _queued[w] = 0;
                        for (auto [u, code] : _nbrs[w]) {
                            Mask kept = 0;
                            for (Mask rest = dom[u]; rest; rest &= rest - 1) {
                                int a = std::countr_zero(rest);
                                if (_support[code][a] & dom[w])
                                    kept |= bit(a);
                            }
                            if (kept != dom[u]) {
                                dom[u] = kept;
                                if (! kept) {
                                    for (std::size_t k = qi + 1; k < _queue.size(); ++k)
                                        _queued[_queue[k]] = 0;
                                    _queue.clear();
                                    return false;
                                }
                                if (! _queued[u]) {
                                    _queued[u] = 1;
                                    _queue.push_back(u);
                                }
                            }
                        }
                    }
                    _queue.clear();
                    return true;
                }

                auto enqueue(int v) -> void
                {
                    if (! _queued[v]) {
                        _queued[v] = 1;
                        _queue.push_back(v);
                    }
                }

                // visit returns false to stop the search.
                auto search(vector<Mask> & dom, const std::function<bool (const vector<Mask> &)> & visit) -> bool
                {
                    if (_limit && _nodes >= _limit) {
                        _aborted = true;
                        return false;
                    }
                    ++_nodes;
                    if (! propagate(dom))
                        return true;

                    int var = -1;
                    for (int v = 0; v < _n; ++v)
                        if (std::popcount(dom[v]) > 1) {
                            var = v;
                            break;
                        }
                    if (var == -1)
                        return visit(dom);

                    for (Mask rest = dom[var]; rest; rest &= rest - 1) {
                        auto child = dom;
                        child[var] = rest & -rest;
                        enqueue(var);
                        if (! search(child, visit))
                            return false;
                    }
                    return true;
                }

                auto run(const std::function<bool (const vector<Mask> &)> & visit) -> void
                {
                    auto dom = initial;
                    for (int v = 0; v < _n; ++v) {
                        if (! dom[v])
                            return;
                        enqueue(v);
                    }
                    search(dom, visit);
                }
        };

        inline auto to_map(const vector<Mask> & dom) -> Homomorphism
        {
            Homomorphism f(dom.size());
            for (std::size_t v = 0; v < dom.size(); ++v)
                f[v] = std::countr_zero(dom[v]);
            return f;
        }
    }

    // Deterministic: lowest-index open variable, lowest value first.
    inline auto search_hom(const ListCspInstance & inst, const TwoEdgeColouredGraph & h,
            unsigned long long node_limit = 0) -> SearchResult
    {
        detail::HomSearcher s(inst, h, node_limit);
        SearchResult result;
        s.run([&] (const vector<detail::Mask> & dom) {
            result.map = detail::to_map(dom);
            result.status = SearchStatus::Found;
            return false;
        });
        result.nodes = s.nodes();
        if (result.status != SearchStatus::Found && s.aborted())
            result.status = SearchStatus::BudgetExceeded;
        return result;
    }

    inline auto find_hom(const ListCspInstance & inst, const TwoEdgeColouredGraph & h) -> optional<Homomorphism>
    {
        auto r = search_hom(inst, h);
        if (r.status == SearchStatus::Found)
            return r.map;
        return std::nullopt;
    }

    inline auto find_hom(const TwoEdgeColouredGraph & g, const TwoEdgeColouredGraph & h) -> optional<Homomorphism>
    {
        return find_hom(with_full_lists(g, h.size()), h);
    }

    // All list homomorphisms in lexicographic order.
    inline auto all_homs(const ListCspInstance & inst, const TwoEdgeColouredGraph & h, std::size_t limit = 1000000)
        -> vector<Homomorphism>
    {
        detail::HomSearcher s(inst, h, 0);
        vector<Homomorphism> result;
        s.run([&] (const vector<detail::Mask> & dom) {
            result.push_back(detail::to_map(dom));
            if (result.size() > limit)
                throw Error("too many homomorphisms to enumerate");
            return true;
        });
        return result;
    }

    constexpr int endomorphism_limit = 7;

    inline auto endomorphisms(const TwoEdgeColouredGraph & h) -> vector<Homomorphism>
    {
        if (h.size() > endomorphism_limit)
            throw Error("endomorphism enumeration is limited to " + std::to_string(endomorphism_limit) + " vertices");
        return all_homs(with_full_lists(h, h.size()), h);
    }

    inline auto is_injective(const Homomorphism & f) -> bool
    {
        auto s = f;
        std::sort(s.begin(), s.end());
        return std::adjacent_find(s.begin(), s.end()) == s.end();
    }

    inline auto automorphisms(const TwoEdgeColouredGraph & h) -> vector<Homomorphism>
    {
        // injective endomorphisms of a finite structure are automorphisms
        vector<Homomorphism> result;
        for (auto & f : endomorphisms(h))
            if (is_injective(f))
                result.push_back(f);
        return result;
    }

    struct Core
    {
        TwoEdgeColouredGraph graph;
        vector<int> vertices;   // ids in the input, ascending; index i is core vertex i
        vector<int> retraction; // input vertex -> core vertex index; identity on the core
    };

    constexpr int core_limit = 12;

    inline auto core_of(const TwoEdgeColouredGraph & h) -> Core
    {
        if (h.size() > core_limit)
            throw Error("core computation is limited to " + std::to_string(core_limit) + " vertices");

        int n = h.size();
        vector<int> alive(n);
        for (int i = 0; i < n; ++i)
            alive[i] = i;
        vector<int> to_alive(n); // input vertex -> input vertex in current image
        for (int i = 0; i < n; ++i)
            to_alive[i] = i;

        bool shrunk = true;
        while (shrunk && alive.size() > 1) {
            shrunk = false;
            auto cur = induced(h, alive);
            int k = cur.size();
            for (int x = 0; x < k && ! shrunk; ++x) {
                auto inst = with_full_lists(cur, k);
                for (auto & l : inst.lists)
                    l.erase(std::find(l.begin(), l.end(), x));
                if (auto e = find_hom(inst, cur)) {
                    vector<int> image;
                    for (int y : *e)
                        image.push_back(alive[y]);
                    std::sort(image.begin(), image.end());
                    image.erase(std::unique(image.begin(), image.end()), image.end());
                    vector<int> step(n, -1);
                    for (int i = 0; i < k; ++i)
                        step[alive[i]] = alive[(*e)[i]];
                    for (int v = 0; v < n; ++v)
                        to_alive[v] = step[to_alive[v]];
                    alive = image;
                    shrunk = true;
                }
            }
        }

        Core c;
        c.vertices = alive;
        c.graph = induced(h, alive);
        vector<int> index_of(n, -1);
        for (std::size_t i = 0; i < alive.size(); ++i)
            index_of[alive[i]] = int(i);

        // restricted to the core the map is an automorphism; undo it
        int k = c.graph.size();
        vector<int> sigma(k), inverse(k);
        for (int i = 0; i < k; ++i)
            sigma[i] = index_of[to_alive[alive[i]]];
        for (int i = 0; i < k; ++i)
            inverse[sigma[i]] = i;
        c.retraction.resize(n);
        for (int v = 0; v < n; ++v)
            c.retraction[v] = inverse[index_of[to_alive[v]]];
        return c;
    }

    // f with uv an edge iff f(u)f(v) an edge, loops included.
    inline auto is_full_hom(const SimpleGraph & g, const SimpleGraph & h, const vector<int> & f) -> bool
    {
        if (int(f.size()) != g.size())
            return false;
        for (int u = 0; u < g.size(); ++u)
            for (int v = u; v < g.size(); ++v)
                if (g.has_edge(u, v) != h.has_edge(f[u], f[v]))
                    return false;
        return true;
    }

    // Plain backtracking over vertices in index order.
    inline auto find_full_hom(const SimpleGraph & g, const SimpleGraph & h) -> optional<vector<int>>
    {
        int n = g.size(), m = h.size();
        vector<int> f(n, -1);
        std::function<bool (int)> extend = [&] (int v) -> bool {
            if (v == n)
                return true;
            for (int a = 0; a < m; ++a) {
                bool ok = g.has_loop(v) == h.has_loop(a);
                for (int u = 0; u < v && ok; ++u)
                    ok = g.has_edge(u, v) == h.has_edge(f[u], a);
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
