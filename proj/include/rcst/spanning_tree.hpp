#ifndef RCST_SPANNING_TREE_HPP
#define RCST_SPANNING_TREE_HPP

#include <algorithm>
#include <vector>

#include "rcst/cost.hpp"
#include "rcst/graph.hpp"

namespace rcst {

// Read-only view of per-edge weights in one unit. The original view reads the
// host graph's weights; a scaled view reads a caller-owned array of perturbed
// weights. Cost functionals report their result in the view's unit.
class EdgeWeights {
  public:
    static EdgeWeights original(const Graph& g) { return EdgeWeights(&g, nullptr); }
    static EdgeWeights scaled_view(const int128* w) { return EdgeWeights(nullptr, w); }

    int128 operator[](int e) const {
        return scaled_ ? scaled_[e] : static_cast<int128>(g_->edge(e).w);
    }
    CostUnit unit() const { return scaled_ ? CostUnit::scaled : CostUnit::original; }

  private:
    EdgeWeights(const Graph* g, const int128* w) : g_(g), scaled_(w) {}
    const Graph* g_;
    const int128* scaled_;
};

// A validated spanning tree of a host graph, stored as edge ids plus a rooted
// adjacency structure (root 0). Construction goes through verify_spanning_tree,
// which rejects anything that is not a spanning tree of the host.
class SpanningTree {
  public:
    const Graph& graph() const { return *g_; }
    int vertex_count() const { return g_->vertex_count(); }

    // sorted ascending, size n-1
    const std::vector<int>& edge_ids() const { return edges_; }

    int parent(int v) const { return parent_[static_cast<std::size_t>(v)]; }
    int parent_edge(int v) const { return parent_edge_[static_cast<std::size_t>(v)]; }
    int depth(int v) const { return depth_[static_cast<std::size_t>(v)]; }
    // vertices in breadth-first order from the root; parents precede children
    const std::vector<int>& bfs_order() const { return order_; }
    const std::vector<std::pair<int, int>>& tree_neighbors(int v) const {
        return adj_[static_cast<std::size_t>(v)];
    }

    friend SpanningTree verify_spanning_tree(const Graph& g, std::vector<int> edge_ids);

  private:
    SpanningTree() = default;
    const Graph* g_ = nullptr;
    std::vector<int> edges_;
    std::vector<int> parent_, parent_edge_, depth_, order_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
};

inline SpanningTree verify_spanning_tree(const Graph& g, std::vector<int> edge_ids) {
    const int n = g.vertex_count();
    std::sort(edge_ids.begin(), edge_ids.end());
    for (std::size_t i = 0; i < edge_ids.size(); ++i) {
        if (edge_ids[i] < 0 || edge_ids[i] >= g.edge_count())
            throw InvariantError("edge id out of range");
        if (i > 0 && edge_ids[i] == edge_ids[i - 1]) throw InvariantError("duplicate edge id");
    }
    if (static_cast<int>(edge_ids.size()) != n - 1)
        throw NotATreeError(NotATreeError::Reason::wrong_edge_count,
                            "expected " + std::to_string(n - 1) + " edges, got " +
                                std::to_string(edge_ids.size()));
    SpanningTree t;
    t.g_ = &g;
    t.edges_ = edge_ids;
    t.adj_.assign(static_cast<std::size_t>(n), {});
    for (int id : edge_ids) {
        const EdgeRec& e = g.edge(id);
        t.adj_[static_cast<std::size_t>(e.u)].push_back({e.v, id});
        t.adj_[static_cast<std::size_t>(e.v)].push_back({e.u, id});
    }
    t.parent_.assign(static_cast<std::size_t>(n), -1);
    t.parent_edge_.assign(static_cast<std::size_t>(n), -1);
    t.depth_.assign(static_cast<std::size_t>(n), 0);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    // scan every component so a cycle is reported even when vertex 0 cannot
    // reach it; with n-1 edges a disconnected selection must contain one
    bool cycle = false;
    for (int start = 0; start < n; ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        seen[static_cast<std::size_t>(start)] = 1;
        std::vector<int> queue{start};
        if (start == 0) t.order_.push_back(0);
        for (std::size_t head = 0; head < queue.size(); ++head) {
            int v = queue[head];
            for (auto [to, eid] : t.adj_[static_cast<std::size_t>(v)]) {
                if (eid == t.parent_edge_[static_cast<std::size_t>(v)]) continue;
                if (seen[static_cast<std::size_t>(to)]) {
                    cycle = true;
                    continue;
                }
                seen[static_cast<std::size_t>(to)] = 1;
                t.parent_[static_cast<std::size_t>(to)] = v;
                t.parent_edge_[static_cast<std::size_t>(to)] = eid;
                t.depth_[static_cast<std::size_t>(to)] = t.depth_[static_cast<std::size_t>(v)] + 1;
                queue.push_back(to);
                if (start == 0) t.order_.push_back(to);
            }
        }
    }
    // with n-1 distinct edges an acyclic selection is automatically connected,
    // so cycle is the informative reason and disconnected is a safety net
    if (cycle) throw NotATreeError(NotATreeError::Reason::cycle, "edge set contains a cycle");
    if (static_cast<int>(t.order_.size()) != n)
        throw NotATreeError(NotATreeError::Reason::disconnected,
                            "edge set does not connect all vertices");
    return t;
}

// Unique tree path with edges ordered from s to u; empty when s == u.
inline Path tree_path(const SpanningTree& t, int s, int u) {
    std::vector<int> sv{s}, se, uv{u}, ue;
    int a = s, b = u;
    while (t.depth(a) > t.depth(b)) {
        se.push_back(t.parent_edge(a));
        a = t.parent(a);
        sv.push_back(a);
    }
    while (t.depth(b) > t.depth(a)) {
        ue.push_back(t.parent_edge(b));
        b = t.parent(b);
        uv.push_back(b);
    }
    while (a != b) {
        se.push_back(t.parent_edge(a));
        a = t.parent(a);
        sv.push_back(a);
        ue.push_back(t.parent_edge(b));
        b = t.parent(b);
        uv.push_back(b);
    }
    Path p;
    p.vertices = std::move(sv);
    p.edges = std::move(se);
    // append the u-side half reversed, skipping the shared meeting vertex
    for (std::size_t i = uv.size(); i-- > 1;) p.vertices.push_back(uv[i - 1]);
    for (std::size_t i = ue.size(); i-- > 0;) p.edges.push_back(ue[i]);
    return p;
}

inline CostValue path_weight(const Path& p, const EdgeWeights& w) {
    CostValue total = CostValue::zero(w.unit());
    for (int e : p.edges) total += CostValue(w[e], w.unit());
    return total;
}

// Distances from s to every vertex along tree paths.
inline std::vector<int128> tree_distances(const SpanningTree& t, int s, const EdgeWeights& w) {
    const int n = t.vertex_count();
    std::vector<int128> dist(static_cast<std::size_t>(n), 0);
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> queue{s};
    seen[static_cast<std::size_t>(s)] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (auto [to, eid] : t.tree_neighbors(v)) {
            if (seen[static_cast<std::size_t>(to)]) continue;
            seen[static_cast<std::size_t>(to)] = 1;
            dist[static_cast<std::size_t>(to)] =
                checked_add(dist[static_cast<std::size_t>(v)], w[eid]);
            queue.push_back(to);
        }
    }
    return dist;
}

// Routing cost as the literal double sum over ordered vertex pairs.
inline CostValue routing_cost_pairs(const SpanningTree& t, const EdgeWeights& w) {
    const int n = t.vertex_count();
    int128 total = 0;
    for (int s = 0; s < n; ++s) {
        std::vector<int128> dist = tree_distances(t, s, w);
        for (int v = 0; v < n; ++v) total = checked_add(total, dist[static_cast<std::size_t>(v)]);
    }
    return CostValue(total, w.unit());
}

namespace detail {

// subtree_size[v] over the rooted structure, computed leaf to root
inline std::vector<long long> subtree_sizes(const SpanningTree& t) {
    const int n = t.vertex_count();
    std::vector<long long> sz(static_cast<std::size_t>(n), 1);
    const std::vector<int>& order = t.bfs_order();
    for (std::size_t i = order.size(); i-- > 1;) {
        int v = order[i];
        sz[static_cast<std::size_t>(t.parent(v))] += sz[static_cast<std::size_t>(v)];
    }
    return sz;
}

} // namespace detail

// Routing cost by edge decomposition: removing tree edge e leaves sides of
// sizes a and n-a, and e is crossed by 2*a*(n-a) ordered pairs.
inline CostValue routing_cost_edges(const SpanningTree& t, const EdgeWeights& w) {
    const int n = t.vertex_count();
    std::vector<long long> sz = detail::subtree_sizes(t);
    int128 total = 0;
    for (int v : t.bfs_order()) {
        if (v == t.bfs_order().front()) continue;
        int128 a = sz[static_cast<std::size_t>(v)];
        int128 crossings = checked_mul(2, checked_mul(a, n - a));
        total = checked_add(total, checked_mul(crossings, w[t.parent_edge(v)]));
    }
    return CostValue(total, w.unit());
}

// Sum-requirement cost as the literal double sum over ordered pairs.
inline CostValue src_cost_pairs(const SpanningTree& t, const EdgeWeights& w) {
    const Graph& g = t.graph();
    const int n = t.vertex_count();
    int128 total = 0;
    for (int s = 0; s < n; ++s) {
        std::vector<int128> dist = tree_distances(t, s, w);
        for (int v = 0; v < n; ++v) {
            int128 rr = checked_add(g.requirement(s), g.requirement(v));
            total = checked_add(total, checked_mul(rr, dist[static_cast<std::size_t>(v)]));
        }
    }
    return CostValue(total, w.unit());
}

// Sum-requirement cost by edge decomposition. For tree edge e with sides A
// (the child subtree) and B, the ordered pairs crossing e contribute
// 2 * w(e) * (|A| * R(B) + |B| * R(A)) where R sums requirements.
inline CostValue src_cost(const SpanningTree& t, const EdgeWeights& w) {
    const Graph& g = t.graph();
    const int n = t.vertex_count();
    std::vector<long long> sz = detail::subtree_sizes(t);
    std::vector<int128> rsum(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v) rsum[static_cast<std::size_t>(v)] = g.requirement(v);
    const std::vector<int>& order = t.bfs_order();
    for (std::size_t i = order.size(); i-- > 1;) {
        int v = order[i];
        rsum[static_cast<std::size_t>(t.parent(v))] =
            checked_add(rsum[static_cast<std::size_t>(t.parent(v))], rsum[static_cast<std::size_t>(v)]);
    }
    int128 rtotal = rsum[static_cast<std::size_t>(order.front())];
    int128 total = 0;
    for (int v : order) {
        if (v == order.front()) continue;
        int128 a = sz[static_cast<std::size_t>(v)];
        int128 ra = rsum[static_cast<std::size_t>(v)];
        int128 mixed = checked_add(checked_mul(a, checked_sub(rtotal, ra)),
                                   checked_mul(static_cast<int128>(n) - a, ra));
        total = checked_add(total, checked_mul(2, checked_mul(mixed, w[t.parent_edge(v)])));
    }
    return CostValue(total, w.unit());
}

// Two-source cost cleared of the rational lambda = p/q:
//   q * sum_v (lambda * d(s1,v) + d(s2,v)) = p * sum_v d(s1,v) + q * sum_v d(s2,v).
// Values with the same p, q are directly comparable.
inline CostValue two_source_cost(const SpanningTree& t, const EdgeWeights& w,
                                 const TwoSourceSpec& spec) {
    const int n = t.vertex_count();
    std::vector<int128> d1 = tree_distances(t, spec.s1, w);
    std::vector<int128> d2 = tree_distances(t, spec.s2, w);
    int128 sum1 = 0, sum2 = 0;
    for (int v = 0; v < n; ++v) {
        sum1 = checked_add(sum1, d1[static_cast<std::size_t>(v)]);
        sum2 = checked_add(sum2, d2[static_cast<std::size_t>(v)]);
    }
    return CostValue(checked_add(checked_mul(spec.p, sum1), checked_mul(spec.q, sum2)), w.unit());
}

} // namespace rcst

#endif
