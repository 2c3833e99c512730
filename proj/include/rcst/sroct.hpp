#ifndef RCST_SROCT_HPP
#define RCST_SROCT_HPP

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "rcst/cost.hpp"
#include "rcst/graph.hpp"
#include "rcst/isolation.hpp"
#include "rcst/mrct.hpp"
#include "rcst/parallel.hpp"
#include "rcst/rational.hpp"
#include "rcst/spanning_tree.hpp"

namespace rcst {

// Shortest path tree rooted at root, assembled from the cached parent tables
// of the analyzed instance. Requires strong min-uniqueness, which makes the
// tree independent of traversal order.
inline SpanningTree shortest_path_tree(const ScaledWeights& sw, int root) {
    const Graph& g = sw.graph();
    if (root < 0 || root >= g.vertex_count()) throw PreconditionError("root out of range");
    const PathTables& t = detail::tables_for(sw);
    std::vector<int> edges;
    edges.reserve(static_cast<std::size_t>(g.vertex_count() - 1));
    for (int v = 0; v < g.vertex_count(); ++v) {
        if (v == root) continue;
        if (!t.reachable(root, v)) throw NotATreeError(NotATreeError::Reason::disconnected);
        edges.push_back(t.parent_edge_of(root, v));
    }
    return verify_spanning_tree(g, edges);
}

namespace detail {

// src cost of the shortest path tree rooted at root, under weights w, without
// materializing a SpanningTree. Uses the edge decomposition: an edge splitting
// off vertex set A with requirement mass R_A contributes
// 2 w(e) (|A| (R - R_A) + (n - |A|) R_A).
struct SptCostScratch {
    std::vector<std::vector<int>> children;
    std::vector<int> order;
    std::vector<long long> size_buf;
    std::vector<int128> req_buf;
};

inline int128 spt_src_cost(const Graph& g, const PathTables& t, int root, const EdgeWeights& w,
                           SptCostScratch& s) {
    const int n = g.vertex_count();
    s.children.assign(static_cast<std::size_t>(n), {});
    for (int v = 0; v < n; ++v) {
        if (v == root) continue;
        s.children[static_cast<std::size_t>(t.parent_of(root, v))].push_back(v);
    }
    s.order.clear();
    s.order.push_back(root);
    for (std::size_t qi = 0; qi < s.order.size(); ++qi)
        for (int c : s.children[static_cast<std::size_t>(s.order[qi])]) s.order.push_back(c);
    if (static_cast<int>(s.order.size()) != n)
        throw Error("internal: parent table does not span the graph");
    s.size_buf.assign(static_cast<std::size_t>(n), 1);
    s.req_buf.assign(static_cast<std::size_t>(n), 0);
    int128 total_req = 0;
    for (int v = 0; v < n; ++v) {
        s.req_buf[static_cast<std::size_t>(v)] = g.requirement(v);
        total_req = checked_add(total_req, static_cast<int128>(g.requirement(v)));
    }
    int128 total = 0;
    for (std::size_t qi = s.order.size(); qi-- > 1;) {
        const int v = s.order[qi];
        const int p = t.parent_of(root, v);
        const int e = t.parent_edge_of(root, v);
        const long long a = s.size_buf[static_cast<std::size_t>(v)];
        const int128 ra = s.req_buf[static_cast<std::size_t>(v)];
        s.size_buf[static_cast<std::size_t>(p)] += a;
        s.req_buf[static_cast<std::size_t>(p)] =
            checked_add(s.req_buf[static_cast<std::size_t>(p)], ra);
        int128 mass = checked_add(checked_mul(static_cast<int128>(a), checked_sub(total_req, ra)),
                                  checked_mul(static_cast<int128>(n - a), ra));
        total = checked_add(total, checked_mul(checked_mul(static_cast<int128>(2), w[e]), mass));
    }
    return total;
}

} // namespace detail

struct SroctResult {
    SpanningTree tree;
    std::optional<CostValue> scaled_cost; // absent for the zero subgraph branch
    CostValue original_cost;
    int root = -1;                        // -1 for the zero subgraph branch
    Rational slack{0, 1};                 // ratio bound is 2 * (1 + slack)
};

struct SroctOutcome {
    SolveStatus status = SolveStatus::fail;
    std::optional<SroctResult> result;
    std::optional<Witness> witness;
    SpecialCase special = SpecialCase::none;
};

inline Rational sroct_slack(const Graph& g, const PerturbationConfig& cfg) {
    if (g.max_requirement() == 0) return Rational(0, 1);
    const int n = g.vertex_count();
    const int128 nn = static_cast<int128>(n);
    const int128 numer = checked_mul(checked_mul(static_cast<int128>(g.max_pair_requirement()),
                                                 checked_mul(nn, checked_mul(nn, nn))),
                                     checked_pow(nn, cfg.numer_exponent));
    const int128 denom = checked_mul(static_cast<int128>(2) * g.max_requirement(),
                                     checked_pow(nn, cfg.denom_exponent));
    return Rational(numer, denom);
}

// Sum-requirement solver: the best shortest path tree over all roots is a
// 2(1 + slack) approximation. A spanning connected zero weight subgraph short
// circuits to an exact zero cost optimum.
inline SroctOutcome parallel_sroct(const Graph& g, const PerturbationConfig& cfg = {},
                                   int threads = 0) {
    if (!is_connected(g)) return SroctOutcome{SolveStatus::disconnected, {}, {}, SpecialCase::none};
    if (auto zero_tree = zero_weight_spanning_tree(g)) {
        SpanningTree t = verify_spanning_tree(g, *zero_tree);
        CostValue orig = src_cost(t, EdgeWeights::original(g));
        if (orig.value() != 0) throw Error("internal: zero subgraph tree has nonzero cost");
        return SroctOutcome{SolveStatus::tree,
                            SroctResult{std::move(t), {}, orig, -1, Rational(0, 1)},
                            {},
                            SpecialCase::zero_subgraph_spanning};
    }
    ScaledWeights sw = perturb(g, cfg);
    UniquenessReport rep = check_strong_min_unique(sw, threads);
    if (!rep.unique)
        return SroctOutcome{SolveStatus::fail, {}, rep.witness, SpecialCase::none};
    const PathTables& tables = analyze(sw);
    const int n = g.vertex_count();
    struct Best {
        int128 cost = kInfWeight;
        int root = -1;
    };
    const EdgeWeights scaled = sw.view();
    Best win = parallel_reduce<Best>(
        static_cast<std::size_t>(n), threads, Best{},
        [&](std::size_t lo, std::size_t hi) {
            Best acc;
            detail::SptCostScratch scratch;
            for (std::size_t x = lo; x < hi; ++x) {
                int128 c = detail::spt_src_cost(g, tables, static_cast<int>(x), scaled, scratch);
                if (c < acc.cost) acc = Best{c, static_cast<int>(x)};
            }
            return acc;
        },
        [](Best a, Best b) {
            if (b.root < 0) return a;
            if (a.root < 0) return b;
            if (b.cost < a.cost) return b;
            if (a.cost < b.cost) return a;
            return a.root <= b.root ? a : b;
        });
    if (win.root < 0) throw Error("internal: empty root sweep");
    SpanningTree tree = shortest_path_tree(sw, win.root);
    CostValue scaled_cost = src_cost(tree, scaled);
    if (scaled_cost.value() != win.cost) throw Error("internal: root cost mismatch on re-evaluation");
    CostValue orig = src_cost(tree, EdgeWeights::original(g));
    return SroctOutcome{
        SolveStatus::tree,
        SroctResult{std::move(tree), scaled_cost, orig, win.root, sroct_slack(g, cfg)},
        {},
        SpecialCase::none};
}

} // namespace rcst

#endif
