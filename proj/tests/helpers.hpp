#ifndef RCST_TESTS_HELPERS_HPP
#define RCST_TESTS_HELPERS_HPP

#include <algorithm>
#include <optional>
#include <queue>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "rcst/graph.hpp"
#include "rcst/int128.hpp"
#include "rcst/isolation.hpp"
#include "rcst/spanning_tree.hpp"

namespace rcst_test {

using rcst::int128;

inline rcst::Graph make_graph(int n, const std::vector<std::tuple<int, int, long long>>& es,
                              const std::vector<long long>& reqs = {},
                              std::optional<rcst::TwoSourceSpec> spec = {}) {
    std::vector<rcst::EdgeRec> edges;
    for (auto [u, v, w] : es) edges.push_back({u, v, w});
    std::vector<long long> r = reqs;
    if (r.empty()) r.assign(static_cast<std::size_t>(n), 0);
    return rcst::Graph(n, edges, r, spec);
}

inline rcst::Graph parse(const std::string& text) {
    std::istringstream in(text);
    return rcst::parse_graph(in);
}

// Independent shortest-path oracle: textbook label-setting (Dijkstra) with a
// linear scan instead of a heap. Deliberately unrelated to the hop-indexed
// dynamic program used by the library.
inline std::vector<int128> dijkstra(const rcst::Graph& g, const std::vector<int128>& w, int s) {
    const int n = g.vertex_count();
    const int128 inf = rcst::kInfWeight;
    std::vector<int128> dist(static_cast<std::size_t>(n), inf);
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    dist[static_cast<std::size_t>(s)] = 0;
    for (int round = 0; round < n; ++round) {
        int best = -1;
        for (int v = 0; v < n; ++v)
            if (!done[static_cast<std::size_t>(v)] && dist[static_cast<std::size_t>(v)] < inf &&
                (best < 0 || dist[static_cast<std::size_t>(v)] < dist[static_cast<std::size_t>(best)]))
                best = v;
        if (best < 0) break;
        done[static_cast<std::size_t>(best)] = 1;
        for (auto [to, e] : g.neighbors(best)) {
            int128 cand = dist[static_cast<std::size_t>(best)] + w[static_cast<std::size_t>(e)];
            if (cand < dist[static_cast<std::size_t>(to)]) dist[static_cast<std::size_t>(to)] = cand;
        }
    }
    return dist;
}

// Routing cost by the definition: sum of tree distances over ordered pairs,
// where tree distances come from independent per-source Dijkstra restricted
// to tree edges.
inline int128 routing_cost_reference(const rcst::Graph& g, const std::vector<int>& tree_edges,
                                     const std::vector<int128>& w) {
    const int n = g.vertex_count();
    std::vector<int128> wt(static_cast<std::size_t>(g.edge_count()), rcst::kInfWeight / 4);
    for (int e : tree_edges) wt[static_cast<std::size_t>(e)] = w[static_cast<std::size_t>(e)];
    int128 total = 0;
    for (int s = 0; s < n; ++s) {
        std::vector<int128> d = dijkstra(g, wt, s);
        for (int t = 0; t < n; ++t)
            if (t != s) total += d[static_cast<std::size_t>(t)];
    }
    return total;
}

inline std::vector<int128> original_weights(const rcst::Graph& g) {
    std::vector<int128> w;
    for (int e = 0; e < g.edge_count(); ++e) w.push_back(g.edge(e).w);
    return w;
}

// All connected simple graphs on n labeled vertices, as edge lists over the
// fixed pair order (0,1),(0,2),...,(n-2,n-1).
inline std::vector<std::vector<std::pair<int, int>>> all_connected_graphs(int n) {
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) pairs.push_back({u, v});
    std::vector<std::vector<std::pair<int, int>>> out;
    const int m = static_cast<int>(pairs.size());
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
        std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
        std::vector<std::pair<int, int>> es;
        for (int i = 0; i < m; ++i)
            if (mask & (1u << i)) {
                es.push_back(pairs[static_cast<std::size_t>(i)]);
                adj[static_cast<std::size_t>(pairs[static_cast<std::size_t>(i)].first)].push_back(
                    pairs[static_cast<std::size_t>(i)].second);
                adj[static_cast<std::size_t>(pairs[static_cast<std::size_t>(i)].second)].push_back(
                    pairs[static_cast<std::size_t>(i)].first);
            }
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<int> stack{0};
        seen[0] = 1;
        int reached = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int to : adj[static_cast<std::size_t>(v)])
                if (!seen[static_cast<std::size_t>(to)]) {
                    seen[static_cast<std::size_t>(to)] = 1;
                    ++reached;
                    stack.push_back(to);
                }
        }
        if (reached == n) out.push_back(es);
    }
    return out;
}

} // namespace rcst_test

#endif
