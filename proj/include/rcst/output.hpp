#ifndef RCST_OUTPUT_HPP
#define RCST_OUTPUT_HPP

#include <cstdint>
#include <sstream>
#include <string>

#include "rcst/graph.hpp"
#include "rcst/mrct.hpp"
#include "rcst/oracle.hpp"
#include "rcst/sroct.hpp"
#include "rcst/two_mrct.hpp"

namespace rcst {

enum class OutputFormat { text, kv };

inline const char* to_token(SpecialCase s) {
    switch (s) {
        case SpecialCase::none: return "none";
        case SpecialCase::zero_weights_substituted: return "zero-weights";
        case SpecialCase::zero_subgraph_spanning: return "zero-subgraph";
        case SpecialCase::zero_source_distance: return "zero-source-distance";
    }
    return "none";
}

// Seed and attempt index actually used after the retry loop; echoed in kv
// output so runs can be reproduced exactly.
struct RunInfo {
    std::uint64_t seed = 0;
    int attempt = 1;
};

namespace detail {

inline void render_edges(std::ostream& os, const Graph& g, const SpanningTree& t) {
    os << "tree " << g.vertex_count() << "\n";
    for (int e : t.edge_ids()) {
        const EdgeRec& rec = g.edge(e);
        os << "edge " << std::min(rec.u, rec.v) << " " << std::max(rec.u, rec.v) << "\n";
    }
}

inline void render_kv_prelude(std::ostream& os, const char* solver, const Graph& g,
                              const RunInfo& info) {
    os << "solver " << solver << "\n";
    os << "n " << g.vertex_count() << "\n";
    os << "m " << g.edge_count() << "\n";
    os << "seed " << info.seed << "\n";
    os << "attempt " << info.attempt << "\n";
}

inline void render_witness_kv(std::ostream& os, const Witness& w) {
    os << "witness-source " << w.source << "\n";
    os << "witness-k " << w.hop_bound << "\n";
    os << "witness-x " << w.vertex << "\n";
}

} // namespace detail

inline std::string render_mrct(const Graph& g, const MrctOutcome& o, const RunInfo& info,
                               OutputFormat f) {
    std::ostringstream os;
    if (o.status == SolveStatus::disconnected) {
        if (f == OutputFormat::kv) {
            detail::render_kv_prelude(os, "mrct", g, info);
            os << "status disconnected\n";
        }
        os << "disconnected\n";
        return os.str();
    }
    if (o.status == SolveStatus::fail) {
        if (f == OutputFormat::kv) {
            detail::render_kv_prelude(os, "mrct", g, info);
            os << "status fail\n";
            if (o.witness) detail::render_witness_kv(os, *o.witness);
        }
        os << "fail\n";
        return os.str();
    }
    const ApproxResult& r = *o.result;
    if (f == OutputFormat::text) {
        detail::render_edges(os, g, r.tree);
        os << "cost routing " << to_string(r.original_cost.value()) << "\n";
        os << "ratio-bound " << to_string(r.guarantee) << "\n";
        return os.str();
    }
    detail::render_kv_prelude(os, "mrct", g, info);
    os << "status tree\n";
    os << "special " << to_token(o.special) << "\n";
    os << "r " << r.radius << "\n";
    os << "winning-seq ";
    for (std::size_t i = 0; i < r.sequence.size(); ++i)
        os << (i ? "," : "") << r.sequence[i];
    os << "\n";
    detail::render_edges(os, g, r.tree);
    os << "cost-routing " << to_string(r.original_cost.value()) << "\n";
    os << "scaled-cost " << to_string(r.scaled_cost.value()) << "\n";
    os << "ratio-bound " << to_string(r.guarantee) << "\n";
    return os.str();
}

inline std::string render_sroct(const Graph& g, const SroctOutcome& o, const RunInfo& info,
                                OutputFormat f) {
    std::ostringstream os;
    if (o.status == SolveStatus::disconnected) {
        if (f == OutputFormat::kv) {
            detail::render_kv_prelude(os, "sroct", g, info);
            os << "status disconnected\n";
        }
        os << "disconnected\n";
        return os.str();
    }
    if (o.status == SolveStatus::fail) {
        if (f == OutputFormat::kv) {
            detail::render_kv_prelude(os, "sroct", g, info);
            os << "status fail\n";
            if (o.witness) detail::render_witness_kv(os, *o.witness);
        }
        os << "fail\n";
        return os.str();
    }
    const SroctResult& r = *o.result;
    if (f == OutputFormat::text) {
        detail::render_edges(os, g, r.tree);
        os << "cost src " << to_string(r.original_cost.value()) << "\n";
        if (r.root >= 0) os << "root " << r.root << "\n";
        os << "slack " << to_string(r.slack) << "\n";
        return os.str();
    }
    detail::render_kv_prelude(os, "sroct", g, info);
    os << "status tree\n";
    os << "special " << to_token(o.special) << "\n";
    detail::render_edges(os, g, r.tree);
    os << "cost-src " << to_string(r.original_cost.value()) << "\n";
    if (r.scaled_cost) os << "scaled-cost " << to_string(r.scaled_cost->value()) << "\n";
    if (r.root >= 0) os << "root " << r.root << "\n";
    os << "slack " << to_string(r.slack) << "\n";
    return os.str();
}

inline std::string render_w2(const Graph& g, const W2Outcome& o, const RunInfo& info,
                             OutputFormat f) {
    std::ostringstream os;
    if (o.status == SolveStatus::disconnected) {
        if (f == OutputFormat::kv) {
            detail::render_kv_prelude(os, "w2mrct", g, info);
            os << "status disconnected\n";
        }
        os << "disconnected\n";
        return os.str();
    }
    if (o.status == SolveStatus::fail) {
        if (f == OutputFormat::kv) {
            detail::render_kv_prelude(os, "w2mrct", g, info);
            os << "status fail\n";
            if (o.witness) detail::render_witness_kv(os, *o.witness);
        }
        os << "fail\n";
        return os.str();
    }
    const W2Result& r = *o.result;
    if (f == OutputFormat::text) {
        detail::render_edges(os, g, r.tree);
        os << "cost two-source " << to_string(r.original_cost.value()) << "\n";
        if (r.z1_size >= 0) {
            os << "z1-size " << r.z1_size << "\n";
            os << "bridge " << r.bridge.first << " " << r.bridge.second << "\n";
        }
        os << "slack " << to_string(r.slack) << "\n";
        return os.str();
    }
    detail::render_kv_prelude(os, "w2mrct", g, info);
    os << "status tree\n";
    os << "special " << to_token(o.special) << "\n";
    detail::render_edges(os, g, r.tree);
    os << "cost-two-source " << to_string(r.original_cost.value()) << "\n";
    if (r.scaled_cost) os << "scaled-cost " << to_string(r.scaled_cost->value()) << "\n";
    if (r.z1_size >= 0) {
        os << "z1-size " << r.z1_size << "\n";
        os << "bridge " << r.bridge.first << " " << r.bridge.second << "\n";
    }
    os << "slack " << to_string(r.slack) << "\n";
    return os.str();
}

inline std::string render_unique(const UniquenessReport& rep, OutputFormat f) {
    std::ostringstream os;
    if (f == OutputFormat::text) {
        os << "unique: " << (rep.unique ? "true" : "false") << "\n";
        if (rep.witness)
            os << "witness: s=" << rep.witness->source << " k=" << rep.witness->hop_bound
               << " x=" << rep.witness->vertex << "\n";
        return os.str();
    }
    os << "unique " << (rep.unique ? "true" : "false") << "\n";
    if (rep.witness) detail::render_witness_kv(os, *rep.witness);
    return os.str();
}

inline std::string render_exact(const Graph& g, const ExactResult& r, const std::string& functional,
                                OutputFormat f) {
    std::ostringstream os;
    if (f == OutputFormat::kv) {
        os << "solver exact-" << functional << "\n";
        os << "n " << g.vertex_count() << "\n";
        os << "m " << g.edge_count() << "\n";
        os << "status tree\n";
    }
    detail::render_edges(os, g, r.tree);
    if (f == OutputFormat::text) {
        os << "cost " << functional << " " << to_string(r.cost.value()) << "\n";
        os << "trees-examined " << r.tree_count << "\n";
    } else {
        os << "cost-" << functional << " " << to_string(r.cost.value()) << "\n";
        os << "trees-examined " << r.tree_count << "\n";
    }
    return os.str();
}

} // namespace rcst

#endif
