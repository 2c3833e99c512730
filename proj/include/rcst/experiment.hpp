#ifndef RCST_EXPERIMENT_HPP
#define RCST_EXPERIMENT_HPP

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rcst/driver.hpp"
#include "rcst/oracle.hpp"
#include "rcst/output.hpp"
#include "rcst/prng.hpp"

namespace rcst {

// Deterministic integer certificates for the approximation guarantees, in
// original units. Each follows from bounding the perturbation mass of the
// optimum tree, so they hold on every non-failing run, not just on average.

// 2n (27r+6) c <= (36r+32)(2n+1) opt
inline bool mrct_certificate(int n, int r, int128 c, int128 opt) {
    const int128 lhs = checked_mul(checked_mul(static_cast<int128>(2) * n,
                                               static_cast<int128>(27) * r + 6),
                                   c);
    const int128 rhs = checked_mul(checked_mul(static_cast<int128>(36) * r + 32,
                                               static_cast<int128>(2) * n + 1),
                                   opt);
    return lhs <= rhs;
}

// D c <= 2 D opt + M n^3 n^b, with M the largest requirement pair sum
inline bool sroct_certificate(const Graph& g, const PerturbationConfig& cfg, int128 c, int128 opt) {
    const int128 n = g.vertex_count();
    const int128 d = checked_pow(n, cfg.denom_exponent);
    const int128 nb = checked_pow(n, cfg.numer_exponent);
    const int128 lhs = checked_mul(d, c);
    const int128 slackterm = checked_mul(checked_mul(static_cast<int128>(g.max_pair_requirement()),
                                                     checked_mul(n, checked_mul(n, n))),
                                         nb);
    const int128 rhs = checked_add(checked_mul(checked_mul(static_cast<int128>(2), d), opt), slackterm);
    return lhs <= rhs;
}

// D c <= 2 D opt + 2 (p+q) n^2 n^b
inline bool w2_certificate(const Graph& g, const TwoSourceSpec& spec, const PerturbationConfig& cfg,
                           int128 c, int128 opt) {
    const int128 n = g.vertex_count();
    const int128 d = checked_pow(n, cfg.denom_exponent);
    const int128 nb = checked_pow(n, cfg.numer_exponent);
    const int128 lhs = checked_mul(d, c);
    const int128 slackterm = checked_mul(
        checked_mul(static_cast<int128>(2), static_cast<int128>(spec.p) + spec.q),
        checked_mul(checked_mul(n, n), nb));
    const int128 rhs = checked_add(checked_mul(checked_mul(static_cast<int128>(2), d), opt), slackterm);
    return lhs <= rhs;
}

struct GenSpec {
    int n_lo = 4, n_hi = 7;
    long long w_lo = 1, w_hi = 12;
    long long r_lo = 0, r_hi = 0;
    bool with_sources = false;
    long long p = 1, q = 1;
};

// Random connected graph: a uniform random attachment tree plus each chordal
// pair kept with probability 1/2. Draw order is fixed (n, tree parents, pair
// coins in lex order, weights in edge order, requirements, sources), so one
// seed always yields one instance.
inline Graph random_connected_graph(Prng& rng, const GenSpec& spec) {
    if (spec.n_lo < 1 || spec.n_hi < spec.n_lo) throw PreconditionError("bad vertex range");
    if (spec.w_lo < 0 || spec.w_hi < spec.w_lo) throw PreconditionError("bad weight range");
    if (spec.r_lo < 0 || spec.r_hi < spec.r_lo) throw PreconditionError("bad requirement range");
    const int n = static_cast<int>(rng.range(spec.n_lo, spec.n_hi));
    std::vector<EdgeRec> edges;
    std::set<std::pair<int, int>> present;
    for (int v = 1; v < n; ++v) {
        const int p = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
        edges.push_back({p, v, 1});
        present.insert({p, v});
    }
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) {
            if (present.count({u, v})) continue;
            if (rng.coin()) edges.push_back({u, v, 1});
        }
    for (EdgeRec& e : edges) e.w = rng.range(spec.w_lo, spec.w_hi);
    std::vector<long long> reqs(static_cast<std::size_t>(n), 0);
    for (long long& r : reqs) r = rng.range(spec.r_lo, spec.r_hi);
    std::optional<TwoSourceSpec> sources;
    if (spec.with_sources) {
        if (n < 2) throw PreconditionError("two sources need at least two vertices");
        const int s1 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int s2 = static_cast<int>(rng.below(static_cast<std::uint64_t>(n - 1)));
        if (s2 >= s1) ++s2;
        sources = TwoSourceSpec{s1, s2, spec.p, spec.q};
    }
    return Graph(n, edges, reqs, sources);
}

// Declarative experiment runner. The JSON spec drives randomized instance
// sweeps per solver, optionally cross-checked against the exact oracle with
// the deterministic certificates above. Returns true when every assertion
// held; per-instance lines and a summary go to out.
inline bool run_experiments(const nlohmann::json& spec, std::ostream& out, int default_threads) {
    if (!spec.is_object() || !spec.contains("experiments") || !spec["experiments"].is_array())
        throw ParseError(0, "experiment spec must be an object with an 'experiments' array");
    bool all_ok = true;
    for (const nlohmann::json& e : spec["experiments"]) {
        const std::string name = e.value("name", std::string("unnamed"));
        const std::string solver = e.at("solver").get<std::string>();
        if (solver != "mrct" && solver != "sroct" && solver != "w2mrct")
            throw ParseError(0, "unknown solver '" + solver + "'");
        const int instances = e.value("instances", 10);
        const std::uint64_t seed = e.value("seed", 0ULL);
        const int trials = e.value("trials", 3);
        const int threads = e.value("threads", default_threads);
        const bool compare_exact = e.value("compare-exact", true);
        const long long oracle_cap = e.value("oracle-cap", 10000000LL);
        GenSpec gen;
        if (e.contains("n")) {
            gen.n_lo = e["n"].at(0).get<int>();
            gen.n_hi = e["n"].at(1).get<int>();
        }
        if (e.contains("weight")) {
            gen.w_lo = e["weight"].at(0).get<long long>();
            gen.w_hi = e["weight"].at(1).get<long long>();
        }
        if (e.contains("requirement")) {
            gen.r_lo = e["requirement"].at(0).get<long long>();
            gen.r_hi = e["requirement"].at(1).get<long long>();
        }
        if (solver == "w2mrct") {
            gen.with_sources = true;
            Rational lambda = parse_rational(e.value("lambda", std::string("1")));
            if (!lambda.positive() || lambda.num < lambda.den)
                throw ParseError(0, "lambda must be at least 1");
            if (lambda.num > (static_cast<int128>(1) << 62) ||
                lambda.den > (static_cast<int128>(1) << 62))
                throw ParseError(0, "lambda numerator or denominator too large");
            gen.p = static_cast<long long>(lambda.num);
            gen.q = static_cast<long long>(lambda.den);
        }
        ApproxParams params;
        if (e.contains("epsilon")) params.epsilon = parse_rational(e["epsilon"].get<std::string>());
        if (e.contains("budget")) params.budget = e["budget"].get<long long>();
        params.threads = threads;
        PerturbationConfig cfg;
        cfg.denom_exponent = e.value("denom-exponent", cfg.denom_exponent);
        cfg.numer_exponent = e.value("numer-exponent", cfg.numer_exponent);

        out << "experiment " << name << "\n";
        int solved = 0, fails = 0, cert_failures = 0, oracle_skips = 0;
        double max_ratio = 0.0;
        const auto t0 = std::chrono::steady_clock::now();
        for (int i = 0; i < instances; ++i) {
            Prng rng(seed + static_cast<std::uint64_t>(i));
            Graph g = random_connected_graph(rng, gen);
            cfg.seed = seed * 1000003ULL + static_cast<std::uint64_t>(i);
            out << "instance " << i << " n " << g.vertex_count() << " m " << g.edge_count();
            int128 approx_cost = -1;
            int mrct_r = 0;
            if (solver == "mrct") {
                SolveRun<MrctOutcome> run = run_mrct(g, params, cfg, trials);
                if (run.outcome.status == SolveStatus::tree) {
                    approx_cost = run.outcome.result->original_cost.value();
                    mrct_r = run.outcome.result->radius;
                }
                out << " attempts " << run.attempts.size();
                if (run.outcome.status != SolveStatus::tree) {
                    out << " status fail\n";
                    ++fails;
                    continue;
                }
            } else if (solver == "sroct") {
                SolveRun<SroctOutcome> run = run_sroct(g, cfg, threads, trials);
                if (run.outcome.status == SolveStatus::tree)
                    approx_cost = run.outcome.result->original_cost.value();
                out << " attempts " << run.attempts.size();
                if (run.outcome.status != SolveStatus::tree) {
                    out << " status fail\n";
                    ++fails;
                    continue;
                }
            } else {
                SolveRun<W2Outcome> run = run_w2mrct(g, *g.sources(), cfg, threads, trials);
                if (run.outcome.status == SolveStatus::tree)
                    approx_cost = run.outcome.result->original_cost.value();
                out << " attempts " << run.attempts.size();
                if (run.outcome.status != SolveStatus::tree) {
                    out << " status fail\n";
                    ++fails;
                    continue;
                }
            }
            ++solved;
            out << " status tree cost " << to_string(approx_cost);
            if (compare_exact) {
                try {
                    ExactResult ex = solver == "mrct"    ? exact_mrct(g, oracle_cap)
                                     : solver == "sroct" ? exact_sroct(g, oracle_cap)
                                                         : exact_w2mrct(g, *g.sources(), oracle_cap);
                    const int128 opt = ex.cost.value();
                    bool ok = solver == "mrct"
                                  ? mrct_certificate(g.vertex_count(), mrct_r, approx_cost, opt)
                                  : solver == "sroct"
                                        ? sroct_certificate(g, cfg, approx_cost, opt)
                                        : w2_certificate(g, *g.sources(), cfg, approx_cost, opt);
                    out << " opt " << to_string(opt) << " certificate " << (ok ? "pass" : "FAIL");
                    if (!ok) ++cert_failures;
                    if (opt > 0)
                        max_ratio = std::max(
                            max_ratio, static_cast<double>(approx_cost) / static_cast<double>(opt));
                } catch (const CapExceededError&) {
                    out << " oracle skipped";
                    ++oracle_skips;
                }
            }
            out << "\n";
        }
        const auto t1 = std::chrono::steady_clock::now();
        const long long ms =
            std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
        out << "summary " << name << " instances " << instances << " solved " << solved
            << " fails " << fails << " certificate-failures " << cert_failures << " oracle-skips "
            << oracle_skips << " max-ratio " << max_ratio << " wall-ms " << ms << "\n";
        if (cert_failures > 0) all_ok = false;
    }
    out << "overall " << (all_ok ? "pass" : "FAIL") << "\n";
    return all_ok;
}

} // namespace rcst

#endif
