#ifndef RCST_GRAPH_HPP
#define RCST_GRAPH_HPP

#include <algorithm>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rcst/errors.hpp"
#include "rcst/int128.hpp"

namespace rcst {

struct EdgeRec {
    int u = -1;
    int v = -1;
    long long w = 0; // nonnegative integer weight in original units
};

// Two designated source vertices with rational distance weight lambda = p/q.
// lambda >= 1 is enforced as p >= q >= 1; costs are compared q-cleared so
// everything stays in exact integers.
struct TwoSourceSpec {
    int s1 = -1;
    int s2 = -1;
    long long p = 1;
    long long q = 1;
};

// A walk through the graph: vertices.size() == edges.size() + 1. An empty
// path from s to itself has vertices == {s} and no edges.
struct Path {
    std::vector<int> vertices;
    std::vector<int> edges;

    bool empty() const { return edges.empty(); }
};

// Simple undirected graph with nonnegative integer edge weights, optional
// per-vertex requirements and an optional two-source annotation. Immutable
// after construction; all invariants are checked in the constructor.
class Graph {
  public:
    Graph(int n, std::vector<EdgeRec> edges, std::vector<long long> requirements = {},
          std::optional<TwoSourceSpec> sources = std::nullopt)
        : n_(n), edges_(std::move(edges)), req_(std::move(requirements)), sources_(sources) {
        if (n_ < 1) throw InvariantError("graph needs at least one vertex");
        if (req_.empty()) req_.assign(static_cast<std::size_t>(n_), 0);
        if (static_cast<int>(req_.size()) != n_)
            throw InvariantError("requirement vector size does not match vertex count");
        for (long long r : req_)
            if (r < 0) throw InvariantError("negative requirement");
        adj_.assign(static_cast<std::size_t>(n_), {});
        std::map<std::pair<int, int>, int> seen;
        for (int id = 0; id < static_cast<int>(edges_.size()); ++id) {
            const EdgeRec& e = edges_[static_cast<std::size_t>(id)];
            if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
                throw InvariantError("edge endpoint out of range");
            if (e.u == e.v) throw InvariantError("self loop");
            if (e.w < 0) throw InvariantError("negative edge weight");
            const std::pair<int, int> key{std::min(e.u, e.v), std::max(e.u, e.v)};
            if (!seen.emplace(key, id).second) throw InvariantError("duplicate edge");
            adj_[static_cast<std::size_t>(e.u)].push_back({e.v, id});
            adj_[static_cast<std::size_t>(e.v)].push_back({e.u, id});
        }
        edge_index_ = std::move(seen);
        if (sources_) {
            if (sources_->s1 < 0 || sources_->s1 >= n_ || sources_->s2 < 0 || sources_->s2 >= n_)
                throw InvariantError("source vertex out of range");
            if (sources_->q < 1 || sources_->p < sources_->q)
                throw InvariantError("two-source lambda must satisfy p >= q >= 1");
        }
    }

    int vertex_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }
    const EdgeRec& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }
    const std::vector<EdgeRec>& edges() const { return edges_; }
    long long requirement(int v) const { return req_[static_cast<std::size_t>(v)]; }
    const std::vector<long long>& requirements() const { return req_; }
    const std::optional<TwoSourceSpec>& sources() const { return sources_; }

    // (neighbor, edge id) pairs in insertion order
    const std::vector<std::pair<int, int>>& neighbors(int v) const {
        return adj_[static_cast<std::size_t>(v)];
    }

    std::optional<int> find_edge(int u, int v) const {
        auto it = edge_index_.find({std::min(u, v), std::max(u, v)});
        if (it == edge_index_.end()) return std::nullopt;
        return it->second;
    }

    long long max_weight() const {
        long long m = 0;
        for (const EdgeRec& e : edges_) m = std::max(m, e.w);
        return m;
    }

    long long max_requirement() const {
        long long m = 0;
        for (long long r : req_) m = std::max(m, r);
        return m;
    }

    // largest r(u) + r(v) over unordered pairs u != v, 0 when n == 1
    long long max_pair_requirement() const {
        if (n_ < 2) return 0;
        long long top = -1, second = -1;
        for (long long r : req_) {
            if (r > top) {
                second = top;
                top = r;
            } else if (r > second) {
                second = r;
            }
        }
        return top + second;
    }

  private:
    int n_;
    std::vector<EdgeRec> edges_;
    std::vector<long long> req_;
    std::optional<TwoSourceSpec> sources_;
    std::vector<std::vector<std::pair<int, int>>> adj_;
    std::map<std::pair<int, int>, int> edge_index_;
};

inline bool is_connected(const Graph& g) {
    int n = g.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (auto [to, eid] : g.neighbors(v)) {
            (void)eid;
            if (!seen[static_cast<std::size_t>(to)]) {
                seen[static_cast<std::size_t>(to)] = 1;
                ++reached;
                stack.push_back(to);
            }
        }
    }
    return reached == n;
}

// Edge ids of the subgraph G_0 of zero-weight edges.
inline std::vector<int> zero_weight_edges(const Graph& g) {
    std::vector<int> out;
    for (int id = 0; id < g.edge_count(); ++id)
        if (g.edge(id).w == 0) out.push_back(id);
    return out;
}

// If G_0 is connected and spanning, returns the edge ids of a spanning tree
// inside it found by breadth-first traversal from vertex 0. The traversal is
// deterministic, so repeated calls return the same tree.
inline std::optional<std::vector<int>> zero_weight_spanning_tree(const Graph& g) {
    int n = g.vertex_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> queue{0}, tree;
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        for (auto [to, eid] : g.neighbors(v)) {
            if (g.edge(eid).w != 0 || seen[static_cast<std::size_t>(to)]) continue;
            seen[static_cast<std::size_t>(to)] = 1;
            tree.push_back(eid);
            queue.push_back(to);
        }
    }
    if (static_cast<int>(queue.size()) != n) return std::nullopt;
    return tree;
}

namespace detail {

inline bool parse_ll(const std::string& tok, long long& out) {
    if (tok.empty()) return false;
    std::size_t i = 0;
    bool neg = false;
    if (tok[0] == '-') {
        neg = true;
        i = 1;
        if (tok.size() == 1) return false;
    }
    long long v = 0;
    for (; i < tok.size(); ++i) {
        if (tok[i] < '0' || tok[i] > '9') return false;
        if (__builtin_mul_overflow(v, 10, &v)) return false;
        if (__builtin_add_overflow(v, tok[i] - '0', &v)) return false;
    }
    out = neg ? -v : v;
    return true;
}

} // namespace detail

// Text format, one directive per line, '#' starts a comment line:
//   graph <n> <m>
//   edge <u> <v> <w>        exactly m of these
//   req <v> <r>             optional
//   sources <s1> <s2> <p> <q>   optional, at most one
inline Graph parse_graph(std::istream& in) {
    std::string line;
    int lineno = 0;
    bool have_header = false;
    long long n = 0, m = 0;
    std::vector<EdgeRec> edges;
    std::set<std::pair<int, int>> edge_seen;
    std::vector<long long> reqs;
    std::vector<char> req_seen;
    std::optional<TwoSourceSpec> sources;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue; // blank line
        if (head[0] == '#') continue;
        std::vector<std::string> toks;
        std::string t;
        while (ls >> t) toks.push_back(t);
        auto want = [&](std::size_t k) {
            if (toks.size() != k)
                throw ParseError(lineno, "directive '" + head + "' expects " + std::to_string(k) +
                                             " fields, got " + std::to_string(toks.size()));
        };
        auto num = [&](std::size_t i) {
            long long v;
            if (!detail::parse_ll(toks[i], v)) throw ParseError(lineno, "bad integer '" + toks[i] + "'");
            return v;
        };
        if (head == "graph") {
            if (have_header) throw ParseError(lineno, "duplicate graph header");
            want(2);
            n = num(0);
            m = num(1);
            if (n < 1) throw ParseError(lineno, "vertex count must be at least 1");
            if (m < 0) throw ParseError(lineno, "negative edge count");
            have_header = true;
            reqs.assign(static_cast<std::size_t>(n), 0);
            req_seen.assign(static_cast<std::size_t>(n), 0);
        } else if (head == "edge") {
            if (!have_header) throw ParseError(lineno, "edge before graph header");
            want(3);
            long long u = num(0), v = num(1), w = num(2);
            if (u < 0 || u >= n || v < 0 || v >= n) throw ParseError(lineno, "edge endpoint out of range");
            if (u == v) throw ParseError(lineno, "self loop");
            if (w < 0) throw ParseError(lineno, "negative edge weight");
            if (static_cast<long long>(edges.size()) == m) throw ParseError(lineno, "more edge lines than declared");
            const std::pair<int, int> key{static_cast<int>(std::min(u, v)),
                                          static_cast<int>(std::max(u, v))};
            if (!edge_seen.insert(key).second) throw ParseError(lineno, "duplicate edge");
            edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
        } else if (head == "req") {
            if (!have_header) throw ParseError(lineno, "req before graph header");
            want(2);
            long long v = num(0), r = num(1);
            if (v < 0 || v >= n) throw ParseError(lineno, "req vertex out of range");
            if (r < 0) throw ParseError(lineno, "negative requirement");
            if (req_seen[static_cast<std::size_t>(v)]) throw ParseError(lineno, "duplicate req line");
            req_seen[static_cast<std::size_t>(v)] = 1;
            reqs[static_cast<std::size_t>(v)] = r;
        } else if (head == "sources") {
            if (!have_header) throw ParseError(lineno, "sources before graph header");
            if (sources) throw ParseError(lineno, "duplicate sources line");
            want(4);
            long long s1 = num(0), s2 = num(1), p = num(2), q = num(3);
            if (s1 < 0 || s1 >= n || s2 < 0 || s2 >= n) throw ParseError(lineno, "source vertex out of range");
            if (q < 1 || p < q) throw ParseError(lineno, "lambda must satisfy p >= q >= 1");
            sources = TwoSourceSpec{static_cast<int>(s1), static_cast<int>(s2), p, q};
        } else {
            throw ParseError(lineno, "unknown directive '" + head + "'");
        }
    }
    if (!have_header) throw ParseError(lineno, "missing graph header");
    if (static_cast<long long>(edges.size()) != m)
        throw ParseError(lineno, "declared " + std::to_string(m) + " edges, found " +
                                     std::to_string(edges.size()));
    try {
        return Graph(static_cast<int>(n), std::move(edges), std::move(reqs), sources);
    } catch (const InvariantError& e) {
        throw ParseError(lineno, e.what());
    }
}

inline Graph parse_graph(const std::string& text) {
    std::istringstream in(text);
    return parse_graph(in);
}

} // namespace rcst

#endif
