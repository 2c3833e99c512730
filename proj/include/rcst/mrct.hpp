#ifndef RCST_MRCT_HPP
#define RCST_MRCT_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "rcst/cost.hpp"
#include "rcst/graph.hpp"
#include "rcst/isolation.hpp"
#include "rcst/parallel.hpp"
#include "rcst/rational.hpp"
#include "rcst/spanning_tree.hpp"

namespace rcst {

// Smallest r >= 0 such that 8/(9r+2) < epsilon/2. The returned radius drives
// the candidate sequence length bound r+4 and the additive term of the
// guarantee 4/3 + 8/(9r+2).
inline int radius_for_epsilon(const Rational& epsilon) {
    if (!epsilon.positive()) throw InvariantError("epsilon must be positive");
    int r = 0;
    // 8/(9r+2) < p/(2q)  <=>  16q < p(9r+2)
    while (checked_mul(epsilon.num, static_cast<int128>(9) * r + 2) <=
           checked_mul(static_cast<int128>(16), epsilon.den))
        ++r;
    return r;
}

inline Rational mrct_guarantee(int r, int n) {
    // (4/3 + 8/(9r+2)) * (2n+1)/(2n)
    Rational alpha(static_cast<int128>(36) * r + 32, static_cast<int128>(27) * r + 6);
    return alpha * Rational(static_cast<int128>(2) * n + 1, static_cast<int128>(2) * n);
}

struct CoreSubtree {
    std::vector<int> sequence; // defining vertex sequence, duplicates allowed
    std::vector<int> vertices; // insertion order, sequence heads first
    std::vector<int> edges;    // tree edges of the core, insertion order
};

namespace detail {

// Scratch state for repeated star construction over one analyzed instance.
// All buffers are reused across candidates; visitation is epoch stamped.
struct StarBuilder {
    const Graph* g = nullptr;
    const PathTables* tables = nullptr;
    std::vector<std::uint64_t> mark;
    std::uint64_t stamp = 0;
    std::vector<int> core;       // current core vertex list
    std::vector<int> chain;      // path reconstruction buffer
    std::vector<int> edges;      // accumulated tree edges
    std::vector<int> order;      // bfs order buffer for cost evaluation
    std::vector<int> head, next_edge, to_vertex; // adjacency scratch (tree only)
    std::vector<int> parent_edge_buf;
    std::vector<long long> size_buf;

    StarBuilder(const Graph& graph, const PathTables& t)
        : g(&graph),
          tables(&t),
          mark(static_cast<std::size_t>(graph.vertex_count()), 0),
          head(static_cast<std::size_t>(graph.vertex_count()), -1),
          next_edge(static_cast<std::size_t>(2 * std::max(0, graph.vertex_count() - 1)), -1),
          to_vertex(static_cast<std::size_t>(2 * std::max(0, graph.vertex_count() - 1)), -1),
          parent_edge_buf(static_cast<std::size_t>(graph.vertex_count()), -1),
          size_buf(static_cast<std::size_t>(graph.vertex_count()), 0) {}

    bool covered(int v) const { return mark[static_cast<std::size_t>(v)] == stamp; }
    void cover(int v) { mark[static_cast<std::size_t>(v)] = stamp; }

    // closest vertex of the candidate list under the scaled metric, distance
    // ties broken toward the smaller id
    int closest_core(int v) const {
        int best = -1;
        int128 best_d = kInfWeight;
        for (int c : core) {
            int128 d = tables->distance(c, v);
            if (d < best_d || (d == best_d && c < best)) {
                best_d = d;
                best = c;
            }
        }
        if (best < 0) throw NoneReachableError();
        return best;
    }

    // Appends the path from v to its closest core vertex. New vertices become
    // covered; the shared-suffix property keeps already covered vertices
    // confined to a prefix of the chain starting at the core endpoint. During
    // core building (extend_core) every new path vertex joins the core, and
    // the path must meet the existing core in its endpoint only.
    void attach(int v, bool extend_core) {
        if (covered(v)) return;
        const int c = closest_core(v);
        chain.clear();
        int y = c;
        while (true) {
            chain.push_back(y);
            if (y == v) break;
            y = tables->parent_of(v, y);
        }
        std::size_t j0 = 0;
        while (j0 < chain.size() && covered(chain[j0])) ++j0;
        if (extend_core && j0 != 1)
            throw Error("internal: core path re-enters the partial core");
        for (std::size_t j = j0; j < chain.size(); ++j) {
            cover(chain[j]);
            if (extend_core) core.push_back(chain[j]);
        }
        for (std::size_t j = std::max<std::size_t>(j0, 1); j < chain.size(); ++j)
            edges.push_back(tables->parent_edge_of(v, chain[j - 1]));
    }

    // Builds the core over the sequence. The core vertex list grows with each
    // attached path, so later sequence vertices connect to the closest vertex
    // anywhere in the partial core, interior path vertices included.
    void start(const std::vector<int>& seq) {
        ++stamp;
        core.clear();
        edges.clear();
        cover(seq[0]);
        core.push_back(seq[0]);
        for (std::size_t i = 1; i < seq.size(); ++i) {
            attach(seq[i], true);
            if (!covered(seq[i])) throw Error("internal: core vertex not covered after attach");
        }
    }

    // Builds the full star over the current core: every remaining vertex is
    // attached along its shortest path to the closest vertex of the frozen
    // core. Path interiors become covered but never join the core list.
    void extend_to_star() {
        const int n = g->vertex_count();
        for (int v = 0; v < n; ++v) attach(v, false);
        if (static_cast<int>(edges.size()) != n - 1)
            throw Error("internal: star construction produced a non tree edge count");
    }

    // Routing cost of the currently built tree under weights w, by the edge
    // decomposition sum 2 * sz * (n - sz) * w(e). Also proves tree-ness: n-1
    // edges plus full BFS coverage.
    int128 tree_cost(const EdgeWeights& w) {
        const int n = g->vertex_count();
        std::fill(head.begin(), head.end(), -1);
        int slot = 0;
        for (int e : edges) {
            const EdgeRec& rec = g->edge(e);
            to_vertex[static_cast<std::size_t>(slot)] = rec.v;
            next_edge[static_cast<std::size_t>(slot)] = head[static_cast<std::size_t>(rec.u)];
            head[static_cast<std::size_t>(rec.u)] = slot++;
            to_vertex[static_cast<std::size_t>(slot)] = rec.u;
            next_edge[static_cast<std::size_t>(slot)] = head[static_cast<std::size_t>(rec.v)];
            head[static_cast<std::size_t>(rec.v)] = slot++;
        }
        order.clear();
        order.push_back(core[0]);
        parent_edge_buf[static_cast<std::size_t>(core[0])] = -1;
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        seen[static_cast<std::size_t>(core[0])] = 1;
        for (std::size_t qi = 0; qi < order.size(); ++qi) {
            int v = order[qi];
            for (int it = head[static_cast<std::size_t>(v)]; it >= 0;
                 it = next_edge[static_cast<std::size_t>(it)]) {
                int u = to_vertex[static_cast<std::size_t>(it)];
                if (seen[static_cast<std::size_t>(u)]) continue;
                seen[static_cast<std::size_t>(u)] = 1;
                parent_edge_buf[static_cast<std::size_t>(u)] = edges[static_cast<std::size_t>(it / 2)];
                order.push_back(u);
            }
        }
        if (static_cast<int>(order.size()) != n)
            throw Error("internal: star construction produced a disconnected edge set");
        std::fill(size_buf.begin(), size_buf.end(), 1LL);
        int128 total = 0;
        for (std::size_t qi = order.size(); qi-- > 1;) {
            int v = order[qi];
            int pe = parent_edge_buf[static_cast<std::size_t>(v)];
            const EdgeRec& rec = g->edge(pe);
            int up = rec.u == v ? rec.v : rec.u;
            size_buf[static_cast<std::size_t>(up)] += size_buf[static_cast<std::size_t>(v)];
            const long long a = size_buf[static_cast<std::size_t>(v)];
            int128 contrib = checked_mul(static_cast<int128>(2) * a,
                                         static_cast<int128>(n - a));
            total = checked_add(total, checked_mul(contrib, w[pe]));
        }
        return total;
    }
};

inline void validate_sequence(const Graph& g, const std::vector<int>& seq) {
    if (seq.empty()) throw PreconditionError("core sequence must be nonempty");
    for (int v : seq)
        if (v < 0 || v >= g.vertex_count()) throw PreconditionError("sequence vertex out of range");
}

inline const PathTables& tables_for(const ScaledWeights& sw) {
    const PathTables& t = analyze(sw);
    if (!t.report.unique)
        throw PreconditionError("construction requires strongly min-unique weights");
    return t;
}

} // namespace detail

// Minimal subtree spanning the sequence vertices: each sequence vertex is
// joined to the closest vertex already in the core along its shortest path.
inline CoreSubtree build_core(const ScaledWeights& sw, const std::vector<int>& seq) {
    detail::validate_sequence(sw.graph(), seq);
    const PathTables& t = detail::tables_for(sw);
    detail::StarBuilder b(sw.graph(), t);
    b.start(seq);
    return CoreSubtree{seq, b.core, b.edges};
}

// Full candidate tree for a sequence: the core plus a shortest path from every
// remaining vertex to its closest core vertex.
inline SpanningTree build_star(const ScaledWeights& sw, const std::vector<int>& seq) {
    detail::validate_sequence(sw.graph(), seq);
    const PathTables& t = detail::tables_for(sw);
    detail::StarBuilder b(sw.graph(), t);
    b.start(seq);
    b.extend_to_star();
    return verify_spanning_tree(sw.graph(), b.edges);
}

struct ApproxParams {
    Rational epsilon{1, 1};
    long long budget = 100000000; // refuse instances with more candidates than this
    int threads = 0;              // 0 = hardware
    bool include_repeated_sequences = false;
};

struct ApproxResult {
    SpanningTree tree;
    CostValue scaled_cost;
    CostValue original_cost;
    std::vector<int> sequence; // winning core sequence
    int radius = 0;
    Rational guarantee{1, 1};
};

namespace detail {

// number of duplicate-free sequences of length k over n vertices
inline int128 perm_count(int n, int k) {
    int128 p = 1;
    for (int i = 0; i < k; ++i) p = checked_mul(p, static_cast<int128>(n - i));
    return p;
}

inline int128 pow_count(int n, int k) {
    int128 p = 1;
    for (int i = 0; i < k; ++i) p = checked_mul(p, static_cast<int128>(n));
    return p;
}

// Unranks the rank-th length-k sequence over {0..n-1} in lexicographic order.
// Duplicate-free mode walks the shrinking availability list; repeated mode is
// plain base-n. Deterministic bijection with the global candidate index.
inline void unrank_sequence(int n, int k, int128 rank, bool repeated, std::vector<int>& out,
                            std::vector<int>& avail) {
    out.clear();
    if (repeated) {
        out.resize(static_cast<std::size_t>(k));
        for (int pos = k - 1; pos >= 0; --pos) {
            out[static_cast<std::size_t>(pos)] = static_cast<int>(rank % n);
            rank /= n;
        }
        return;
    }
    avail.clear();
    for (int v = 0; v < n; ++v) avail.push_back(v);
    for (int pos = 0; pos < k; ++pos) {
        const int128 block = perm_count(n - pos - 1, k - pos - 1);
        const int idx = static_cast<int>(rank / block);
        rank %= block;
        out.push_back(avail[static_cast<std::size_t>(idx)]);
        avail.erase(avail.begin() + idx);
    }
}

struct CandidateSpace {
    int n = 0;
    int kmax = 0;
    bool repeated = false;
    std::vector<int128> offset; // offset[k] = first global index of length-k block
    int128 total = 0;

    CandidateSpace(int n_, int kmax_, bool repeated_) : n(n_), kmax(kmax_), repeated(repeated_) {
        offset.assign(static_cast<std::size_t>(kmax + 2), 0);
        int128 acc = 0;
        for (int k = 1; k <= kmax; ++k) {
            offset[static_cast<std::size_t>(k)] = acc;
            int128 cnt = repeated ? pow_count(n, k) : perm_count(n, k);
            acc = checked_add(acc, cnt);
        }
        offset[static_cast<std::size_t>(kmax + 1)] = acc;
        total = acc;
    }

    void decode(int128 index, std::vector<int>& out, std::vector<int>& avail) const {
        int k = 1;
        while (index >= offset[static_cast<std::size_t>(k + 1)]) ++k;
        unrank_sequence(n, k, index - offset[static_cast<std::size_t>(k)], repeated, out, avail);
    }
};

} // namespace detail

// Candidate sweep: all core sequences of length 1..r+4 (duplicate free by
// default; sequences with repeated vertices never beat their deduplicated
// subsequence), each expanded to a star tree, keeping the minimum scaled cost.
// Ties break toward the smaller global candidate index, which orders
// candidates by length first and lexicographically within a length.
inline ApproxResult approx_mrct(const ScaledWeights& sw, const ApproxParams& params = {}) {
    const Graph& g = sw.graph();
    const PathTables& tables = detail::tables_for(sw);
    const int n = g.vertex_count();
    const int r = radius_for_epsilon(params.epsilon);
    const int kmax = params.include_repeated_sequences ? r + 4 : std::min(r + 4, n);
    if (kmax < 1) throw PreconditionError("empty candidate space");
    detail::CandidateSpace space(n, kmax, params.include_repeated_sequences);
    if (params.budget >= 0 && space.total > static_cast<int128>(params.budget))
        throw BudgetExceededError("candidate count " + to_string(space.total) +
                                  " exceeds budget " + std::to_string(params.budget));
    const long long total = static_cast<long long>(space.total);
    struct Best {
        int128 cost = kInfWeight;
        long long index = -1;
    };
    const EdgeWeights scaled = sw.view();
    Best win = parallel_reduce<Best>(
        static_cast<std::size_t>(total), params.threads, Best{},
        [&](std::size_t lo, std::size_t hi) {
            Best acc;
            detail::StarBuilder b(g, tables);
            std::vector<int> seq, avail;
            for (std::size_t i = lo; i < hi; ++i) {
                space.decode(static_cast<int128>(i), seq, avail);
                b.start(seq);
                b.extend_to_star();
                const int128 c = b.tree_cost(scaled);
                if (c < acc.cost) acc = Best{c, static_cast<long long>(i)};
            }
            return acc;
        },
        [](Best a, Best b) {
            if (b.index < 0) return a;
            if (a.index < 0) return b;
            if (b.cost < a.cost) return b;
            if (a.cost < b.cost) return a;
            return a.index <= b.index ? a : b;
        });
    if (win.index < 0) throw Error("internal: empty candidate sweep");
    std::vector<int> seq, avail;
    space.decode(static_cast<int128>(win.index), seq, avail);
    SpanningTree tree = build_star(sw, seq);
    CostValue scaled_cost = routing_cost_edges(tree, sw.view());
    if (scaled_cost.value() != win.cost)
        throw Error("internal: winner cost mismatch on re-evaluation");
    CostValue original_cost = routing_cost_edges(tree, EdgeWeights::original(g));
    return ApproxResult{std::move(tree), scaled_cost,      original_cost,
                        std::move(seq),  r,                mrct_guarantee(r, n)};
}

enum class SolveStatus { tree, fail, disconnected };
enum class SpecialCase { none, zero_weights_substituted, zero_subgraph_spanning, zero_source_distance };

struct MrctOutcome {
    SolveStatus status = SolveStatus::fail;
    std::optional<ApproxResult> result;  // status == tree
    std::optional<Witness> witness;      // status == fail
    SpecialCase special = SpecialCase::none;
};

// End-to-end randomized solver: perturb, verify strong min-uniqueness (Fail
// with witness otherwise), then run the candidate sweep. An identically zero
// weight function is replaced by unit weights first: every spanning tree then
// costs zero in original units, so any tree returned by the sweep is optimal.
inline MrctOutcome parallel_mrct(const Graph& g, const ApproxParams& params = {},
                                 const PerturbationConfig& cfg = {}) {
    if (!is_connected(g)) return MrctOutcome{SolveStatus::disconnected, {}, {}, SpecialCase::none};
    const Graph* work = &g;
    std::optional<Graph> unit_graph;
    SpecialCase special = SpecialCase::none;
    if (g.max_weight() == 0 && g.edge_count() > 0) {
        std::vector<EdgeRec> unit_edges;
        unit_edges.reserve(static_cast<std::size_t>(g.edge_count()));
        for (int id = 0; id < g.edge_count(); ++id) {
            EdgeRec e = g.edge(id);
            e.w = 1;
            unit_edges.push_back(e);
        }
        unit_graph.emplace(g.vertex_count(), unit_edges, g.requirements(), g.sources());
        work = &*unit_graph;
        special = SpecialCase::zero_weights_substituted;
    }
    ScaledWeights sw = perturb(*work, cfg);
    UniquenessReport rep = check_strong_min_unique(sw, params.threads);
    if (!rep.unique) return MrctOutcome{SolveStatus::fail, {}, rep.witness, special};
    ApproxResult res = approx_mrct(sw, params);
    if (special == SpecialCase::zero_weights_substituted) {
        // re-host the tree on the caller's graph and restate the original cost
        SpanningTree tree = verify_spanning_tree(g, res.tree.edge_ids());
        res.original_cost = routing_cost_edges(tree, EdgeWeights::original(g));
        res.tree = std::move(tree);
    }
    return MrctOutcome{SolveStatus::tree, std::move(res), {}, special};
}

} // namespace rcst

#endif
