#ifndef RCST_ORACLE_HPP
#define RCST_ORACLE_HPP

#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "rcst/graph.hpp"
#include "rcst/isolation.hpp"
#include "rcst/spanning_tree.hpp"

namespace rcst {

namespace detail {

struct MultiEdge {
    int a;
    int b;
    int orig;
};

inline bool multi_connected(int nv, const std::vector<MultiEdge>& es) {
    if (nv <= 1) return true;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(nv));
    for (const MultiEdge& e : es) {
        adj[static_cast<std::size_t>(e.a)].push_back(e.b);
        adj[static_cast<std::size_t>(e.b)].push_back(e.a);
    }
    std::vector<char> seen(static_cast<std::size_t>(nv), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int to : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(to)]) {
                seen[static_cast<std::size_t>(to)] = 1;
                ++reached;
                stack.push_back(to);
            }
        }
    }
    return reached == nv;
}

template <class Fn>
void enumerate_rec(int nv, const std::vector<MultiEdge>& es, std::vector<int>& chosen,
                   long long cap, long long& count, Fn& yield) {
    if (nv == 1) {
        if (count == cap) throw CapExceededError(cap);
        ++count;
        yield(chosen);
        return;
    }
    if (es.empty()) return; // disconnected remainder, dead branch
    const MultiEdge e = es.front();
    std::vector<MultiEdge> rest(es.begin() + 1, es.end());
    // trees avoiding e exist iff the graph stays connected without it
    if (multi_connected(nv, rest)) enumerate_rec(nv, rest, chosen, cap, count, yield);
    // trees containing e: contract e, relabeling the higher endpoint away
    const int keep = std::min(e.a, e.b), gone = std::max(e.a, e.b);
    std::vector<MultiEdge> contracted;
    contracted.reserve(rest.size());
    for (MultiEdge r : rest) {
        if (r.a == gone) r.a = keep;
        if (r.b == gone) r.b = keep;
        if (r.a == r.b) continue; // self loop after contraction
        if (r.a > gone) --r.a;
        if (r.b > gone) --r.b;
        contracted.push_back(r);
    }
    chosen.push_back(e.orig);
    enumerate_rec(nv - 1, contracted, chosen, cap, count, yield);
    chosen.pop_back();
}

} // namespace detail

// Streams every spanning tree of g exactly once (as a sorted-insertion edge id
// list) via contraction and deletion, and returns the total count. Throws
// CapExceededError as soon as more than cap trees would be produced. The
// enumeration order is deterministic.
template <class Fn>
long long enumerate_spanning_trees(const Graph& g, long long cap, Fn&& yield) {
    if (cap < 0) throw PreconditionError("negative enumeration cap");
    if (!is_connected(g)) return 0;
    std::vector<detail::MultiEdge> es;
    es.reserve(static_cast<std::size_t>(g.edge_count()));
    for (int id = 0; id < g.edge_count(); ++id)
        es.push_back({g.edge(id).u, g.edge(id).v, id});
    std::vector<int> chosen;
    long long count = 0;
    detail::enumerate_rec(g.vertex_count(), es, chosen, cap, count, yield);
    return count;
}

inline long long count_spanning_trees(const Graph& g, long long cap = 10000000) {
    return enumerate_spanning_trees(g, cap, [](const std::vector<int>&) {});
}

struct ExactResult {
    SpanningTree tree;
    CostValue cost;
    long long tree_count = 0;
};

namespace detail {

template <class CostFn>
ExactResult exact_argmin(const Graph& g, long long cap, CostFn&& cost_of) {
    if (!is_connected(g)) throw InvariantError("exact solver requires a connected graph");
    std::optional<SpanningTree> best;
    std::optional<CostValue> best_cost;
    long long count = enumerate_spanning_trees(g, cap, [&](const std::vector<int>& ids) {
        SpanningTree t = verify_spanning_tree(g, ids);
        CostValue c = cost_of(t);
        // strict comparison keeps the first tree in enumeration order on ties
        if (!best_cost || c < *best_cost) {
            best_cost = c;
            best = std::move(t);
        }
    });
    return ExactResult{std::move(*best), *best_cost, count};
}

} // namespace detail

// Brute-force optimum routing cost tree by full enumeration. The cost route
// here is the ordered-pair sum, independent of the edge decomposition used by
// the approximation path.
inline ExactResult exact_mrct(const Graph& g, long long cap = 10000000) {
    EdgeWeights w = EdgeWeights::original(g);
    return detail::exact_argmin(g, cap,
                                [&](const SpanningTree& t) { return routing_cost_pairs(t, w); });
}

inline ExactResult exact_sroct(const Graph& g, long long cap = 10000000) {
    EdgeWeights w = EdgeWeights::original(g);
    return detail::exact_argmin(g, cap,
                                [&](const SpanningTree& t) { return src_cost_pairs(t, w); });
}

inline ExactResult exact_w2mrct(const Graph& g, const TwoSourceSpec& spec,
                                long long cap = 10000000) {
    if (spec.s1 < 0 || spec.s1 >= g.vertex_count() || spec.s2 < 0 || spec.s2 >= g.vertex_count())
        throw InvariantError("source vertex out of range");
    if (spec.q < 1 || spec.p < spec.q) throw InvariantError("lambda must satisfy p >= q >= 1");
    EdgeWeights w = EdgeWeights::original(g);
    return detail::exact_argmin(
        g, cap, [&](const SpanningTree& t) { return two_source_cost(t, w, spec); });
}

namespace detail {

// simple-path enumeration; valid exactly when all weights are positive
inline void count_paths_dfs(const Graph& g, const std::vector<int128>& w, int v, int t, int k,
                            int used_edges, int128 weight, std::vector<char>& visited,
                            int128& best, long long& count) {
    if (v == t) {
        if (weight < best) {
            best = weight;
            count = 1;
        } else if (weight == best) {
            ++count;
        }
        return;
    }
    if (used_edges == k) return;
    for (auto [to, e] : g.neighbors(v)) {
        if (visited[static_cast<std::size_t>(to)]) continue;
        visited[static_cast<std::size_t>(to)] = 1;
        count_paths_dfs(g, w, to, t, k, used_edges + 1,
                        checked_add(weight, w[static_cast<std::size_t>(e)]), visited, best, count);
        visited[static_cast<std::size_t>(to)] = 0;
    }
}

} // namespace detail

// |SP^(k)_{s,t}|: the number of minimum-weight s-t walks among walks with at
// most k edges. With positive weights minimum-weight walks are simple, so
// simple-path enumeration is exact and independent of any hop table. When
// zero weights are present the walk-based definition applies literally and is
// evaluated by an exact hop-indexed count.
inline long long count_shortest_paths_bruteforce(const Graph& g, const std::vector<int128>& w,
                                                 int s, int t, int k) {
    const int n = g.vertex_count();
    if (n > 10) throw PreconditionError("brute-force path counting is limited to n <= 10");
    if (static_cast<int>(w.size()) != g.edge_count())
        throw PreconditionError("weight vector size mismatch");
    if (k < 0) throw PreconditionError("negative hop bound");
    if (s < 0 || s >= n || t < 0 || t >= n) throw PreconditionError("vertex out of range");
    bool all_positive = true;
    for (const int128& x : w) {
        if (x < 0) throw PreconditionError("negative weight");
        if (x == 0) all_positive = false;
    }
    if (all_positive) {
        if (s == t) return 1; // the empty path is the unique minimum
        std::vector<char> visited(static_cast<std::size_t>(n), 0);
        visited[static_cast<std::size_t>(s)] = 1;
        int128 best = kInfWeight;
        long long count = 0;
        detail::count_paths_dfs(g, w, s, t, std::min(k, n - 1), 0, 0, visited, best, count);
        return count;
    }
    // exact walk counts, bucketed by exact hop count
    std::vector<int128> prev_d(static_cast<std::size_t>(n), kInfWeight);
    std::vector<int128> prev_c(static_cast<std::size_t>(n), 0);
    prev_d[static_cast<std::size_t>(s)] = 0;
    prev_c[static_cast<std::size_t>(s)] = 1;
    int128 best = prev_d[static_cast<std::size_t>(t)];
    int128 total = best < kInfWeight ? prev_c[static_cast<std::size_t>(t)] : 0;
    for (int j = 1; j <= k; ++j) {
        std::vector<int128> d(static_cast<std::size_t>(n), kInfWeight);
        std::vector<int128> c(static_cast<std::size_t>(n), 0);
        for (int x = 0; x < n; ++x) {
            for (auto [u, e] : g.neighbors(x)) {
                if (prev_d[static_cast<std::size_t>(u)] >= kInfWeight) continue;
                int128 cand =
                    checked_add(prev_d[static_cast<std::size_t>(u)], w[static_cast<std::size_t>(e)]);
                if (cand < d[static_cast<std::size_t>(x)]) {
                    d[static_cast<std::size_t>(x)] = cand;
                    c[static_cast<std::size_t>(x)] = prev_c[static_cast<std::size_t>(u)];
                } else if (cand == d[static_cast<std::size_t>(x)]) {
                    c[static_cast<std::size_t>(x)] =
                        checked_add(c[static_cast<std::size_t>(x)], prev_c[static_cast<std::size_t>(u)]);
                }
            }
        }
        if (d[static_cast<std::size_t>(t)] < best) {
            best = d[static_cast<std::size_t>(t)];
            total = c[static_cast<std::size_t>(t)];
        } else if (d[static_cast<std::size_t>(t)] < kInfWeight && d[static_cast<std::size_t>(t)] == best) {
            total = checked_add(total, c[static_cast<std::size_t>(t)]);
        }
        prev_d.swap(d);
        prev_c.swap(c);
    }
    if (total > static_cast<int128>(std::numeric_limits<long long>::max()))
        throw OverflowError("walk count exceeds 63 bits");
    return static_cast<long long>(total);
}

} // namespace rcst

#endif
