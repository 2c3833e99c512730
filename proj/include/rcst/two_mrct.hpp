#ifndef RCST_TWO_MRCT_HPP
#define RCST_TWO_MRCT_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "rcst/cost.hpp"
#include "rcst/graph.hpp"
#include "rcst/isolation.hpp"
#include "rcst/mrct.hpp"
#include "rcst/sroct.hpp"
#include "rcst/spanning_tree.hpp"

namespace rcst {

// Vertex split by source preference. With lambda = p/q, v belongs to Z1 when
// (p+q) d(v,s1) + q d(s1,s2) <= (p+q) d(v,s2) + p d(s1,s2), i.e. the cleared
// form of d(v,s1) + d12 lambda/(lambda+1) <= d(v,s2) + d12 / (lambda+1).
// Ties go to Z1. Distances are scaled, so membership is deterministic.
struct ZPartition {
    std::vector<int128> d1; // cleared comparison value toward s1
    std::vector<int128> d2; // cleared comparison value toward s2
    std::vector<char> in_z1;
    int z1_size = 0;
};

inline ZPartition classify_z(const ScaledWeights& sw, const TwoSourceSpec& spec) {
    const Graph& g = sw.graph();
    const int n = g.vertex_count();
    if (spec.s1 < 0 || spec.s1 >= n || spec.s2 < 0 || spec.s2 >= n)
        throw PreconditionError("source vertex out of range");
    if (spec.q < 1 || spec.p < spec.q) throw PreconditionError("lambda must satisfy p >= q >= 1");
    const PathTables& t = detail::tables_for(sw);
    const int128 d12 = t.distance(spec.s1, spec.s2);
    if (d12 >= kInfWeight) throw NoneReachableError();
    const int128 pq = static_cast<int128>(spec.p) + spec.q;
    ZPartition z;
    z.d1.resize(static_cast<std::size_t>(n));
    z.d2.resize(static_cast<std::size_t>(n));
    z.in_z1.resize(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        const int128 a =
            checked_add(checked_mul(pq, t.distance(spec.s1, v)), checked_mul(static_cast<int128>(spec.q), d12));
        const int128 b =
            checked_add(checked_mul(pq, t.distance(spec.s2, v)), checked_mul(static_cast<int128>(spec.p), d12));
        z.d1[static_cast<std::size_t>(v)] = a;
        z.d2[static_cast<std::size_t>(v)] = b;
        z.in_z1[static_cast<std::size_t>(v)] = a <= b ? 1 : 0;
        if (z.in_z1[static_cast<std::size_t>(v)]) ++z.z1_size;
    }
    if (!z.in_z1[static_cast<std::size_t>(spec.s1)] || z.in_z1[static_cast<std::size_t>(spec.s2)])
        throw Error("internal: source fell on the wrong side of the split");
    return z;
}

struct W2Result {
    SpanningTree tree;
    std::optional<CostValue> scaled_cost; // absent for special branches
    CostValue original_cost;
    int z1_size = -1;                     // -1 when the split was not taken
    std::pair<int, int> bridge{-1, -1};   // bridge edge endpoints (q_j, q_j+1)
    Rational slack{0, 1};                 // ratio bound is 2 * (1 + slack)
};

struct W2Outcome {
    SolveStatus status = SolveStatus::fail;
    std::optional<W2Result> result;
    std::optional<Witness> witness;
    SpecialCase special = SpecialCase::none;
};

namespace detail {

// Checks that the chosen edges form a tree spanning exactly the vertex set
// they touch, and that every vertex of `members` is touched.
inline void validate_subtree(const Graph& g, const std::vector<int>& edges,
                             const std::vector<int>& members, int anchor,
                             ConstructionInvalidError::Part part) {
    const int n = g.vertex_count();
    std::vector<char> touched(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<std::pair<int, int>>> adj(static_cast<std::size_t>(n));
    std::vector<char> used(static_cast<std::size_t>(g.edge_count()), 0);
    touched[static_cast<std::size_t>(anchor)] = 1;
    for (int e : edges) {
        if (e < 0 || e >= g.edge_count() || used[static_cast<std::size_t>(e)])
            throw ConstructionInvalidError(part);
        used[static_cast<std::size_t>(e)] = 1;
        const EdgeRec& rec = g.edge(e);
        touched[static_cast<std::size_t>(rec.u)] = 1;
        touched[static_cast<std::size_t>(rec.v)] = 1;
        adj[static_cast<std::size_t>(rec.u)].push_back({rec.v, e});
        adj[static_cast<std::size_t>(rec.v)].push_back({rec.u, e});
    }
    int touched_count = 0;
    for (int v = 0; v < n; ++v) touched_count += touched[static_cast<std::size_t>(v)];
    if (static_cast<int>(edges.size()) != touched_count - 1)
        throw ConstructionInvalidError(part);
    for (int v : members)
        if (!touched[static_cast<std::size_t>(v)]) throw ConstructionInvalidError(part);
    // connectivity over the touched set from the anchor
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    seen[static_cast<std::size_t>(anchor)] = 1;
    std::vector<int> stack{anchor};
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [to, e] : adj[static_cast<std::size_t>(v)]) {
            if (!seen[static_cast<std::size_t>(to)]) {
                seen[static_cast<std::size_t>(to)] = 1;
                ++reached;
                stack.push_back(to);
            }
        }
    }
    if (reached != touched_count) throw ConstructionInvalidError(part);
}

// True iff the two vertices are joined by a path of zero weight edges, which
// with nonnegative weights is exactly d_w(a, b) == 0.
inline bool zero_connected(const Graph& g, int a, int b) {
    if (a == b) return true;
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    std::vector<int> stack{a};
    seen[static_cast<std::size_t>(a)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [to, e] : g.neighbors(v)) {
            if (g.edge(e).w != 0 || seen[static_cast<std::size_t>(to)]) continue;
            if (to == b) return true;
            seen[static_cast<std::size_t>(to)] = 1;
            stack.push_back(to);
        }
    }
    return false;
}

// Shortest path forest over the member set, rooted at root: every member is
// joined to root along its cached shortest path. Members must be closed under
// taking path prefixes toward root for the result to stay inside the set;
// the split guarantees it, validate_subtree re-checks the tree shape.
inline std::vector<int> collect_paths(const Graph& g, const PathTables& t, int root,
                                      const std::vector<int>& members) {
    std::vector<char> covered(static_cast<std::size_t>(g.vertex_count()), 0);
    covered[static_cast<std::size_t>(root)] = 1;
    std::vector<int> edges;
    for (int v : members) {
        int y = v;
        while (!covered[static_cast<std::size_t>(y)]) {
            covered[static_cast<std::size_t>(y)] = 1;
            edges.push_back(t.parent_edge_of(root, y));
            y = t.parent_of(root, y);
        }
    }
    return edges;
}

} // namespace detail

inline Rational w2_slack(const Graph& g, const TwoSourceSpec& spec, const PerturbationConfig& cfg) {
    const int128 nn = static_cast<int128>(g.vertex_count());
    // (p+q) n^2 n^b / (D (p+q)) reduced: the optimum costs at least p+q
    (void)spec;
    return Rational(checked_mul(checked_mul(nn, nn), checked_pow(nn, cfg.numer_exponent)),
                    checked_pow(nn, cfg.denom_exponent));
}

// Weighted two source solver. The split Z1/Z2 is spanned by shortest path
// trees toward s1 and s2 respectively, joined by the bridge edge of the
// shortest s1-s2 path at the last Z1 vertex of that path.
inline W2Outcome weighted_2mrct(const Graph& g, const TwoSourceSpec& spec,
                                const PerturbationConfig& cfg = {}, int threads = 0) {
    const int n = g.vertex_count();
    if (spec.s1 < 0 || spec.s1 >= n || spec.s2 < 0 || spec.s2 >= n)
        throw InvariantError("source vertex out of range");
    if (spec.q < 1 || spec.p < spec.q) throw InvariantError("lambda must satisfy p >= q >= 1");
    if (!is_connected(g)) return W2Outcome{SolveStatus::disconnected, {}, {}, SpecialCase::none};
    const EdgeWeights original = EdgeWeights::original(g);
    if (auto zero_tree = zero_weight_spanning_tree(g)) {
        SpanningTree t = verify_spanning_tree(g, *zero_tree);
        CostValue orig = two_source_cost(t, original, spec);
        if (orig.value() != 0) throw Error("internal: zero subgraph tree has nonzero cost");
        return W2Outcome{SolveStatus::tree,
                         W2Result{std::move(t), {}, orig, -1, {-1, -1}, Rational(0, 1)},
                         {},
                         SpecialCase::zero_subgraph_spanning};
    }
    // original-weight source distance decides the degenerate branch
    const bool d12_zero = detail::zero_connected(g, spec.s1, spec.s2);
    ScaledWeights sw = perturb(g, cfg, spec);
    UniquenessReport rep = check_strong_min_unique(sw, threads);
    if (!rep.unique) return W2Outcome{SolveStatus::fail, {}, rep.witness, SpecialCase::none};
    if (d12_zero) {
        // both sources see identical original distances; the shortest path
        // tree at s1 is exactly optimal, not merely a 2 approximation
        SpanningTree t = shortest_path_tree(sw, spec.s1);
        CostValue scaled = two_source_cost(t, sw.view(), spec);
        CostValue orig = two_source_cost(t, original, spec);
        return W2Outcome{SolveStatus::tree,
                         W2Result{std::move(t), scaled, orig, -1, {-1, -1}, Rational(0, 1)},
                         {},
                         SpecialCase::zero_source_distance};
    }
    const PathTables& tables = detail::tables_for(sw);
    ZPartition z = classify_z(sw, spec);
    FindPathResult q_path = find_path(sw, spec.s1, spec.s2);
    if (q_path.status != FindPathResult::Status::found)
        throw Error("internal: no source path despite connectivity and uniqueness");
    const std::vector<int>& q = q_path.path.vertices;
    // last prefix vertex still in Z1; s1 in Z1 and s2 in Z2 bound the scan
    std::size_t j = 0;
    while (j + 1 < q.size() && z.in_z1[static_cast<std::size_t>(q[j + 1])]) ++j;
    const std::pair<int, int> bridge_ends{q[j], q[j + 1]};
    const int bridge_edge = q_path.path.edges[j];
    std::vector<int> z1_members, z2_members;
    for (int v = 0; v < n; ++v)
        (z.in_z1[static_cast<std::size_t>(v)] ? z1_members : z2_members).push_back(v);
    std::vector<int> t1 = detail::collect_paths(g, tables, spec.s1, z1_members);
    detail::validate_subtree(g, t1, z1_members, spec.s1, ConstructionInvalidError::Part::t1);
    std::vector<int> t2 = detail::collect_paths(g, tables, spec.s2, z2_members);
    detail::validate_subtree(g, t2, z2_members, spec.s2, ConstructionInvalidError::Part::t2);
    std::vector<int> all = t1;
    all.insert(all.end(), t2.begin(), t2.end());
    all.push_back(bridge_edge);
    SpanningTree tree = [&] {
        try {
            return verify_spanning_tree(g, all);
        } catch (const NotATreeError&) {
            throw ConstructionInvalidError(ConstructionInvalidError::Part::combined);
        } catch (const InvariantError&) {
            throw ConstructionInvalidError(ConstructionInvalidError::Part::combined);
        }
    }();
    CostValue scaled = two_source_cost(tree, sw.view(), spec);
    CostValue orig = two_source_cost(tree, original, spec);
    return W2Outcome{
        SolveStatus::tree,
        W2Result{std::move(tree), scaled, orig, z.z1_size, bridge_ends, w2_slack(g, spec, cfg)},
        {},
        SpecialCase::none};
}

} // namespace rcst

#endif
