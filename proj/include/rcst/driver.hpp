#ifndef RCST_DRIVER_HPP
#define RCST_DRIVER_HPP

#include <cstdint>
#include <vector>

#include "rcst/graph.hpp"
#include "rcst/mrct.hpp"
#include "rcst/output.hpp"
#include "rcst/sroct.hpp"
#include "rcst/two_mrct.hpp"

namespace rcst {

// One perturbation attempt inside a retry loop.
struct AttemptRecord {
    std::uint64_t seed = 0;
    bool fail = false;
};

template <class Outcome>
struct SolveRun {
    Outcome outcome;
    RunInfo info;                        // seed and attempt that produced outcome
    std::vector<AttemptRecord> attempts; // every attempt, in order
};

namespace detail {

// Retry policy shared by all randomized solvers: attempt i uses seed + i,
// stopping at the first attempt that is not an isolation failure. trials >= 1.
template <class Solve>
auto run_with_retries(std::uint64_t seed, int trials, Solve&& solve)
    -> SolveRun<decltype(solve(seed))> {
    if (trials < 1) throw PreconditionError("trials must be at least 1");
    SolveRun<decltype(solve(seed))> run;
    for (int i = 0; i < trials; ++i) {
        const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
        run.outcome = solve(s);
        const bool failed = run.outcome.status == SolveStatus::fail;
        run.attempts.push_back({s, failed});
        run.info = RunInfo{s, i + 1};
        if (!failed) break;
    }
    return run;
}

} // namespace detail

inline SolveRun<MrctOutcome> run_mrct(const Graph& g, const ApproxParams& params,
                                      PerturbationConfig cfg, int trials) {
    return detail::run_with_retries(cfg.seed, trials, [&](std::uint64_t s) {
        PerturbationConfig c = cfg;
        c.seed = s;
        return parallel_mrct(g, params, c);
    });
}

inline SolveRun<SroctOutcome> run_sroct(const Graph& g, PerturbationConfig cfg, int threads,
                                        int trials) {
    return detail::run_with_retries(cfg.seed, trials, [&](std::uint64_t s) {
        PerturbationConfig c = cfg;
        c.seed = s;
        return parallel_sroct(g, c, threads);
    });
}

inline SolveRun<W2Outcome> run_w2mrct(const Graph& g, const TwoSourceSpec& spec,
                                      PerturbationConfig cfg, int threads, int trials) {
    return detail::run_with_retries(cfg.seed, trials, [&](std::uint64_t s) {
        PerturbationConfig c = cfg;
        c.seed = s;
        return weighted_2mrct(g, spec, c, threads);
    });
}

} // namespace rcst

#endif
