#ifndef RCST_ISOLATION_HPP
#define RCST_ISOLATION_HPP

#include <algorithm>
#include <cstdint>
#include <limits>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "rcst/cost.hpp"
#include "rcst/errors.hpp"
#include "rcst/graph.hpp"
#include "rcst/int128.hpp"
#include "rcst/parallel.hpp"
#include "rcst/prng.hpp"
#include "rcst/rational.hpp"
#include "rcst/spanning_tree.hpp"

namespace rcst {

// Sentinel for "no walk". Large enough that no checked computation reaches it,
// small enough that adding one edge weight to it cannot wrap around.
constexpr int128 kInfWeight = static_cast<int128>(1) << 126;

// Perturbation shape: every edge weight w(e) becomes
//   W(e) = w(e) * n^denom_exponent + rho(e),   rho(e) uniform on {1..n^numer_exponent}.
// The gap denom_exponent - numer_exponent >= 4 keeps the total offset along any
// tree below one original weight unit times n^-4 * n^3, so perturbation can
// never reorder trees whose original costs differ.
struct PerturbationConfig {
    std::uint64_t seed = 0;
    int denom_exponent = 10;
    int numer_exponent = 6;
};

inline void validate(const PerturbationConfig& cfg) {
    if (cfg.denom_exponent < 4) throw InvariantError("denom_exponent must be at least 4");
    if (cfg.numer_exponent < 1) throw InvariantError("numer_exponent must be at least 1");
    if (cfg.numer_exponent > cfg.denom_exponent - 4)
        throw InvariantError("numer_exponent must be at most denom_exponent - 4");
}

// Upper bound on the probability that a perturbed instance fails to be
// strongly min-unique: n^5 / (2 * n^numer_exponent).
inline Rational isolation_failure_bound(int n, int numer_exponent) {
    return Rational(checked_pow(n, 5), checked_mul(2, checked_pow(n, numer_exponent)));
}

// A pair (s, x) whose minimum s-x walk weight under hop bound k is achieved
// by at least two distinct walks.
struct Witness {
    int source = -1;
    int hop_bound = -1;
    int vertex = -1;
};

struct UniquenessReport {
    bool unique = true;
    std::optional<Witness> witness;
};

struct PathTables;
class ScaledWeights;
namespace detail {
struct SwCache;
ScaledWeights perturb_impl(const Graph& g, const PerturbationConfig& cfg, long long lambda_numer);
}

// Immutable perturbed weights over a host graph. Safe to share across
// threads; shortest-path analysis is computed once on demand and cached.
class ScaledWeights {
  public:
    const Graph& graph() const { return *g_; }
    const PerturbationConfig& config() const { return cfg_; }
    int128 denom() const { return denom_; }
    long long numer_range() const { return numer_range_; }
    long long rho(int e) const { return rho_[static_cast<std::size_t>(e)]; }
    int128 weight(int e) const { return w_[static_cast<std::size_t>(e)]; }
    const std::vector<int128>& weights() const { return w_; }
    EdgeWeights view() const { return EdgeWeights::scaled_view(w_.data()); }

    friend ScaledWeights detail::perturb_impl(const Graph& g, const PerturbationConfig& cfg,
                                              long long lambda_numer);
    friend const PathTables& analyze(const ScaledWeights& sw, int threads);

  private:
    ScaledWeights() = default;
    const Graph* g_ = nullptr;
    PerturbationConfig cfg_;
    int128 denom_ = 1;
    long long numer_range_ = 1;
    std::vector<long long> rho_;
    std::vector<int128> w_;
    std::shared_ptr<detail::SwCache> cache_;
};

// Preflight check that no cost functional evaluated on these inputs can leave
// the signed 128-bit range: n^2 ordered pairs, paths of fewer than n edges,
// maximum scaled edge weight, and the requirement or lambda factor.
inline void preflight_cost_bound(const Graph& g, const PerturbationConfig& cfg,
                                 long long lambda_numer) {
    validate(cfg);
    const int128 n = g.vertex_count();
    try {
        int128 d = checked_pow(n, cfg.denom_exponent);
        int128 nb = checked_pow(n, cfg.numer_exponent);
        int128 wmax_scaled = checked_add(checked_mul(g.max_weight(), d), nb);
        int128 factor = checked_add(checked_mul(2, g.max_requirement()),
                                    std::max<long long>(lambda_numer, 1));
        checked_mul(checked_mul(checked_mul(n, n), n), checked_mul(wmax_scaled, factor));
    } catch (const OverflowError&) {
        throw OverflowError(
            "worst-case cost bound exceeds the 128-bit cost range; reduce denom_exponent or "
            "numer_exponent, or shrink the input");
    }
}

inline ScaledWeights perturb(const Graph& g, const PerturbationConfig& cfg = {}) {
    return detail::perturb_impl(g, cfg, g.sources() ? g.sources()->p : 1);
}

// Overload for a caller-supplied two source spec: the preflight must account
// for the externally chosen lambda numerator.
inline ScaledWeights perturb(const Graph& g, const PerturbationConfig& cfg,
                             const TwoSourceSpec& spec) {
    return detail::perturb_impl(g, cfg, std::max(spec.p, g.sources() ? g.sources()->p : 1));
}

inline ScaledWeights detail::perturb_impl(const Graph& g, const PerturbationConfig& cfg,
                                          long long lambda_numer) {
    validate(cfg);
    preflight_cost_bound(g, cfg, lambda_numer);
    const int n = g.vertex_count();
    ScaledWeights sw;
    sw.g_ = &g;
    sw.cfg_ = cfg;
    sw.denom_ = checked_pow(n, cfg.denom_exponent);
    int128 nb = checked_pow(n, cfg.numer_exponent);
    if (nb > static_cast<int128>(std::numeric_limits<long long>::max()))
        throw OverflowError("numerator range n^numer_exponent does not fit 63 bits; reduce "
                            "numer_exponent");
    sw.numer_range_ = static_cast<long long>(nb);
    const int m = g.edge_count();
    sw.rho_.reserve(static_cast<std::size_t>(m));
    sw.w_.reserve(static_cast<std::size_t>(m));
    Prng prng(cfg.seed);
    for (int e = 0; e < m; ++e) {
        long long rho =
            1 + static_cast<long long>(prng.below(static_cast<std::uint64_t>(sw.numer_range_)));
        sw.rho_.push_back(rho);
        sw.w_.push_back(checked_add(checked_mul(g.edge(e).w, sw.denom_), rho));
    }
    sw.cache_ = std::make_shared<detail::SwCache>();
    return sw;
}

// Hop-indexed walk table from a fixed source. delta(j, x) is the minimum
// weight over s-x walks with exactly j edges (kInfWeight when none exists)
// and count(j, x) is the number of walks attaining it, saturated at 2.
// With strictly positive weights every minimum-weight walk is simple, so the
// aggregated count below k hops counts minimum-weight paths exactly.
class HopTable {
  public:
    HopTable(const Graph& g, const std::vector<int128>& w, int source)
        : n_(g.vertex_count()), delta_(static_cast<std::size_t>(n_) * n_, kInfWeight),
          cnt_(static_cast<std::size_t>(n_) * n_, 0) {
        if (static_cast<int>(w.size()) != g.edge_count())
            throw PreconditionError("weight vector size mismatch");
        at(0, source) = 0;
        cnt_at(0, source) = 1;
        for (int j = 1; j < n_; ++j) {
            for (int x = 0; x < n_; ++x) {
                int128 best = kInfWeight;
                int c = 0;
                for (auto [u, e] : g.neighbors(x)) {
                    if (at(j - 1, u) >= kInfWeight) continue;
                    int128 cand = checked_add(at(j - 1, u), w[static_cast<std::size_t>(e)]);
                    if (cand < best) {
                        best = cand;
                        c = cnt_at(j - 1, u);
                    } else if (cand == best) {
                        c = std::min(2, c + cnt_at(j - 1, u));
                    }
                }
                at(j, x) = best;
                cnt_at(j, x) = static_cast<unsigned char>(c);
            }
        }
    }

    HopTable(const ScaledWeights& sw, int source) : HopTable(sw.graph(), sw.weights(), source) {}

    int vertex_count() const { return n_; }
    int128 delta(int j, int x) const { return delta_[index(j, x)]; }
    int count(int j, int x) const { return cnt_[index(j, x)]; }

    // minimum walk weight with at most k edges
    int128 min_distance(int k, int x) const {
        int128 best = kInfWeight;
        for (int j = 0; j <= k; ++j) best = std::min(best, delta(j, x));
        return best;
    }

    // saturated count of minimum-weight walks with at most k edges
    int min_count(int k, int x) const {
        int128 best = min_distance(k, x);
        if (best >= kInfWeight) return 0;
        int c = 0;
        for (int j = 0; j <= k; ++j)
            if (delta(j, x) == best) c = std::min(2, c + count(j, x));
        return c;
    }

  private:
    std::size_t index(int j, int x) const {
        if (j < 0 || j >= n_ || x < 0 || x >= n_) throw PreconditionError("HopTable index range");
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(n_) +
               static_cast<std::size_t>(x);
    }
    int128& at(int j, int x) { return delta_[index(j, x)]; }
    unsigned char& cnt_at(int j, int x) { return cnt_[index(j, x)]; }

    int n_;
    std::vector<int128> delta_;
    std::vector<unsigned char> cnt_;
};

// Single-source shortest-path data for every source, plus the uniqueness
// report the rows were computed under. parent rows reconstruct the unique
// shortest paths only when report.unique holds.
struct PathTables {
    UniquenessReport report;
    int n = 0;
    std::vector<int128> dist;
    std::vector<int> parent;
    std::vector<int> parent_edge;

    int128 distance(int s, int t) const { return dist[row(s) + static_cast<std::size_t>(t)]; }
    int parent_of(int s, int t) const { return parent[row(s) + static_cast<std::size_t>(t)]; }
    int parent_edge_of(int s, int t) const {
        return parent_edge[row(s) + static_cast<std::size_t>(t)];
    }
    bool reachable(int s, int t) const { return distance(s, t) < kInfWeight; }

  private:
    std::size_t row(int s) const { return static_cast<std::size_t>(s) * static_cast<std::size_t>(n); }
};

namespace detail {

struct SwCache {
    std::once_flag once;
    PathTables tables;
};

inline unsigned char sat2(int c) { return static_cast<unsigned char>(c >= 2 ? 2 : c); }

struct SourceScan {
    std::optional<Witness> witness;
    bool parent_ambiguous = false;
};

// Streaming version of HopTable from one source: keeps two hop rows and the
// running aggregate over hop bounds. Witness detection scans hop bounds in
// ascending order and vertices in ascending id, so the first hit is the
// lexicographically smallest (k, x) for this source.
inline SourceScan scan_source(const Graph& g, const std::vector<int128>& w, int s,
                              bool stop_at_witness, int128* dist_row, int* parent_row,
                              int* pedge_row) {
    const int n = g.vertex_count();
    std::vector<int128> prev(static_cast<std::size_t>(n), kInfWeight);
    std::vector<int128> cur(static_cast<std::size_t>(n), kInfWeight);
    std::vector<int128> agg(static_cast<std::size_t>(n), kInfWeight);
    std::vector<unsigned char> prev_c(static_cast<std::size_t>(n), 0);
    std::vector<unsigned char> cur_c(static_cast<std::size_t>(n), 0);
    std::vector<unsigned char> agg_c(static_cast<std::size_t>(n), 0);
    prev[static_cast<std::size_t>(s)] = 0;
    prev_c[static_cast<std::size_t>(s)] = 1;
    agg[static_cast<std::size_t>(s)] = 0;
    agg_c[static_cast<std::size_t>(s)] = 1;
    SourceScan out;
    for (int j = 1; j < n; ++j) {
        if (out.witness && stop_at_witness) break;
        for (int x = 0; x < n; ++x) {
            int128 best = kInfWeight;
            int c = 0;
            for (auto [u, e] : g.neighbors(x)) {
                const int128 du = prev[static_cast<std::size_t>(u)];
                if (du >= kInfWeight) continue;
                int128 cand = checked_add(du, w[static_cast<std::size_t>(e)]);
                if (cand < best) {
                    best = cand;
                    c = prev_c[static_cast<std::size_t>(u)];
                } else if (cand == best) {
                    c = sat2(c + prev_c[static_cast<std::size_t>(u)]);
                }
            }
            cur[static_cast<std::size_t>(x)] = best;
            cur_c[static_cast<std::size_t>(x)] = sat2(c);
        }
        for (int x = 0; x < n; ++x) {
            const std::size_t xi = static_cast<std::size_t>(x);
            if (cur[xi] < agg[xi]) {
                agg[xi] = cur[xi];
                agg_c[xi] = cur_c[xi];
            } else if (cur[xi] < kInfWeight && cur[xi] == agg[xi]) {
                agg_c[xi] = sat2(agg_c[xi] + cur_c[xi]);
            }
            if (!out.witness && agg_c[xi] >= 2) out.witness = Witness{s, j, x};
        }
        std::swap(prev, cur);
        std::swap(prev_c, cur_c);
    }
    if (dist_row)
        for (int x = 0; x < n; ++x) dist_row[x] = agg[static_cast<std::size_t>(x)];
    if (parent_row) {
        for (int x = 0; x < n; ++x) {
            parent_row[x] = -1;
            if (pedge_row) pedge_row[x] = -1;
            if (x == s || agg[static_cast<std::size_t>(x)] >= kInfWeight) continue;
            int found = 0;
            for (auto [u, e] : g.neighbors(x)) {
                const int128 du = agg[static_cast<std::size_t>(u)];
                if (du >= kInfWeight) continue;
                if (checked_add(du, w[static_cast<std::size_t>(e)]) ==
                    agg[static_cast<std::size_t>(x)]) {
                    if (found++ == 0) {
                        parent_row[x] = u;
                        if (pedge_row) pedge_row[x] = e;
                    }
                }
            }
            if (found > 1) out.parent_ambiguous = true;
        }
    }
    return out;
}

struct CheckAccum {
    std::optional<Witness> witness;
    bool ambiguous = false;
};

inline CheckAccum run_scan(const Graph& g, const std::vector<int128>& w, int threads,
                           PathTables* out) {
    const int n = g.vertex_count();
    if (static_cast<int>(w.size()) != g.edge_count())
        throw PreconditionError("weight vector size mismatch");
    for (const int128& x : w)
        if (x <= 0) throw PreconditionError("uniqueness check requires strictly positive weights");
    if (out) {
        out->n = n;
        out->dist.assign(static_cast<std::size_t>(n) * n, kInfWeight);
        out->parent.assign(static_cast<std::size_t>(n) * n, -1);
        out->parent_edge.assign(static_cast<std::size_t>(n) * n, -1);
    }
    return parallel_reduce<CheckAccum>(
        static_cast<std::size_t>(n), threads, CheckAccum{},
        [&](std::size_t lo, std::size_t hi) {
            CheckAccum acc;
            for (std::size_t s = lo; s < hi; ++s) {
                const std::size_t off = s * static_cast<std::size_t>(n);
                SourceScan r = scan_source(g, w, static_cast<int>(s), out == nullptr,
                                           out ? out->dist.data() + off : nullptr,
                                           out ? out->parent.data() + off : nullptr,
                                           out ? out->parent_edge.data() + off : nullptr);
                if (!acc.witness && r.witness) acc.witness = r.witness;
                acc.ambiguous = acc.ambiguous || r.parent_ambiguous;
                if (acc.witness && !out) break;
            }
            return acc;
        },
        [](CheckAccum a, CheckAccum b) {
            // blocks arrive in source order, so the first witness kept is the
            // one with the smallest source
            if (!a.witness) a.witness = b.witness;
            a.ambiguous = a.ambiguous || b.ambiguous;
            return a;
        });
}

} // namespace detail

// Exact strong min-uniqueness test over arbitrary strictly positive weights:
// true iff every (source, hop bound, vertex) has at most one minimum-weight
// walk. Runtime O(n^2 m) sequential work, parallel over sources.
inline UniquenessReport check_strong_min_unique(const Graph& g, const std::vector<int128>& w,
                                                int threads = 0) {
    detail::CheckAccum acc = detail::run_scan(g, w, threads, nullptr);
    return UniquenessReport{!acc.witness.has_value(), acc.witness};
}

// Cached analysis of a perturbed instance: uniqueness report plus per-source
// distance and predecessor tables. Computed once per ScaledWeights; the
// result is independent of the thread count.
inline const PathTables& analyze(const ScaledWeights& sw, int threads = 0) {
    detail::SwCache& cache = *sw.cache_;
    std::call_once(cache.once, [&] {
        detail::CheckAccum acc = detail::run_scan(sw.graph(), sw.weights(), threads, &cache.tables);
        cache.tables.report = UniquenessReport{!acc.witness.has_value(), acc.witness};
        if (cache.tables.report.unique && acc.ambiguous)
            throw Error("internal: ambiguous predecessor despite min-unique weights");
    });
    return cache.tables;
}

inline UniquenessReport check_strong_min_unique(const ScaledWeights& sw, int threads = 0) {
    return analyze(sw, threads).report;
}

struct FindPathResult {
    enum class Status { found, not_min_unique, unreachable };
    Status status = Status::found;
    Path path;
    CostValue weight = CostValue::zero(CostUnit::scaled);
};

// Unique shortest path from s to t under perturbed weights. Reports
// not_min_unique or unreachable through the result, never by throwing.
inline FindPathResult find_path(const ScaledWeights& sw, int s, int t) {
    const PathTables& tables = analyze(sw);
    FindPathResult res;
    if (!tables.report.unique) {
        res.status = FindPathResult::Status::not_min_unique;
        return res;
    }
    if (!tables.reachable(s, t)) {
        res.status = FindPathResult::Status::unreachable;
        return res;
    }
    res.status = FindPathResult::Status::found;
    res.weight = CostValue(tables.distance(s, t), CostUnit::scaled);
    std::vector<int> vs, es;
    for (int v = t; v != s; v = tables.parent_of(s, v)) {
        vs.push_back(v);
        es.push_back(tables.parent_edge_of(s, v));
    }
    vs.push_back(s);
    res.path.vertices.assign(vs.rbegin(), vs.rend());
    res.path.edges.assign(es.rbegin(), es.rend());
    return res;
}

// Vertex of the candidate set nearest to x, smallest id on distance ties.
inline int closest(const ScaledWeights& sw, int x, const std::vector<int>& candidates) {
    const PathTables& tables = analyze(sw);
    if (!tables.report.unique)
        throw PreconditionError("closest requires strongly min-unique weights");
    if (candidates.empty()) throw PreconditionError("closest requires a nonempty candidate set");
    int best = -1;
    int128 best_d = kInfWeight;
    for (int v : candidates) {
        int128 d = tables.distance(x, v);
        if (d >= kInfWeight) continue;
        if (d < best_d || (d == best_d && v < best)) {
            best_d = d;
            best = v;
        }
    }
    if (best < 0) throw NoneReachableError("no candidate vertex reachable from x");
    return best;
}

// Unique shortest path from v to the nearest vertex of r_set (empty when v is
// already a member). The path meets r_set only at its final vertex.
inline Path add_path(const ScaledWeights& sw, const std::vector<int>& r_set, int v) {
    for (int r : r_set)
        if (r == v) return Path{{v}, {}};
    int c = closest(sw, v, r_set);
    FindPathResult res = find_path(sw, v, c);
    if (res.status != FindPathResult::Status::found)
        throw PreconditionError("add_path requires min-unique weights and a reachable target");
    return std::move(res.path);
}

} // namespace rcst

#endif
