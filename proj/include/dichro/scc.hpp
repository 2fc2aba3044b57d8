#pragma once

#include <dichro/graph.hpp>

#include <set>

namespace dichro
{
    // Tarjan's algorithm without recursion. Components are numbered in the
    // order Tarjan closes them, which is a reverse topological order.
    inline auto strongly_connected_components(const Digraph & g) -> vector<int>
    {
        int n = g.n, counter = 0, components = 0;
        vector<int> index(n, -1), low(n, 0), comp(n, -1), stack;
        vector<bool> on_stack(n, false);
        vector<pair<int, std::size_t>> call;

        for (int s = 0; s < n; ++s) {
            if (index[s] != -1)
                continue;
            call.emplace_back(s, 0);
            while (! call.empty()) {
                auto & [v, next] = call.back();
                if (next == 0 && index[v] == -1) {
                    index[v] = low[v] = counter++;
                    stack.push_back(v);
                    on_stack[v] = true;
                }
                if (next < g.out[v].size()) {
                    int w = g.out[v][next++];
                    if (index[w] == -1)
                        call.emplace_back(w, 0);
                    else if (on_stack[w])
                        low[v] = std::min(low[v], index[w]);
                    continue;
                }
                if (low[v] == index[v]) {
                    int w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        comp[w] = components;
                    } while (w != v);
                    ++components;
                }
                int finished = v;
                call.pop_back();
                if (! call.empty()) {
                    int parent = call.back().first;
                    low[parent] = std::min(low[parent], low[finished]);
                }
            }
        }
        return comp;
    }

    // Components as vertex sets in a topological order of the condensation.
    // The order is built from the end: the sink holding the smallest vertex
    // is placed last, then the process repeats on what is left.
    inline auto topological_components(const Digraph & g) -> vector<vector<int>>
    {
        auto comp = strongly_connected_components(g);
        int k = 0;
        for (int c : comp)
            k = std::max(k, c + 1);

        vector<vector<int>> members(k);
        for (int v = 0; v < g.n; ++v)
            members[comp[v]].push_back(v);

        vector<std::set<int>> succ(k), pred(k);
        for (int v = 0; v < g.n; ++v)
            for (int w : g.out[v])
                if (comp[v] != comp[w]) {
                    succ[comp[v]].insert(comp[w]);
                    pred[comp[w]].insert(comp[v]);
                }

        vector<int> outdeg(k);
        std::set<pair<int, int>> sinks;
        for (int c = 0; c < k; ++c) {
            outdeg[c] = int(succ[c].size());
            if (outdeg[c] == 0)
                sinks.emplace(members[c].front(), c);
        }

        vector<vector<int>> order;
        while (! sinks.empty()) {
            int c = sinks.begin()->second;
            sinks.erase(sinks.begin());
            order.push_back(members[c]);
            for (int p : pred[c])
                if (--outdeg[p] == 0)
                    sinks.emplace(members[p].front(), p);
        }
        std::reverse(order.begin(), order.end());
        return order;
    }
}
