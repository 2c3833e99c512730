// Command line front end for the routing cost spanning tree library.
//
// Exit codes:
//   0  success (including a 'disconnected' report and a negative uniqueness check)
//   1  usage error, unreadable input, or malformed input text
//   2  structurally invalid input: invariant violations, overflow refusals,
//      a non-tree edge set given to 'cost', enumeration cap or candidate
//      budget exceeded
//   3  every perturbation attempt failed the min-uniqueness check
//   4  the two-source construction failed validation (never expected)
//   5  experiment assertions failed

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "rcst/rcst.hpp"

namespace {

int env_threads() {
    const char* s = std::getenv("RCST_THREADS");
    if (!s || !*s) return 0;
    char* end = nullptr;
    long v = std::strtol(s, &end, 10);
    if (end == s || *end != '\0' || v < 0 || v > 4096) return 0;
    return static_cast<int>(v);
}

rcst::Graph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw rcst::ParseError(0, "cannot open '" + path + "'");
    return rcst::parse_graph(in);
}

// Tree files mirror solver output: a 'tree <n>' header plus n-1 'edge <u> <v>'
// lines. Unknown directives and comments are ignored so solver output can be
// fed back unchanged.
rcst::SpanningTree load_tree(const std::string& path, const rcst::Graph& g) {
    std::ifstream in(path);
    if (!in) throw rcst::ParseError(0, "cannot open '" + path + "'");
    std::string line;
    int lineno = 0;
    bool have_header = false;
    std::vector<int> ids;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head)) continue;
        if (head[0] == '#') continue;
        if (head == "tree") {
            long long n = -1;
            if (!(ls >> n) || n != g.vertex_count())
                throw rcst::ParseError(lineno, "tree header does not match the graph");
            have_header = true;
        } else if (head == "edge") {
            if (!have_header) throw rcst::ParseError(lineno, "edge before tree header");
            long long u, v;
            if (!(ls >> u >> v)) throw rcst::ParseError(lineno, "edge expects two endpoints");
            if (u < 0 || u >= g.vertex_count() || v < 0 || v >= g.vertex_count())
                throw rcst::ParseError(lineno, "edge endpoint out of range");
            auto id = g.find_edge(static_cast<int>(u), static_cast<int>(v));
            if (!id) throw rcst::InvariantError("tree edge " + std::to_string(u) + " " +
                                                std::to_string(v) + " is not a graph edge");
            ids.push_back(*id);
        }
        // other directives (cost lines and kv output) are ignored
    }
    if (!have_header) throw rcst::ParseError(0, "missing tree header");
    return rcst::verify_spanning_tree(g, ids);
}

rcst::OutputFormat parse_format(const std::string& f) {
    return f == "kv" ? rcst::OutputFormat::kv : rcst::OutputFormat::text;
}

struct CommonOpts {
    std::string file;
    std::uint64_t seed = 0;
    int trials = 3;
    int denom_exponent = 10;
    int numer_exponent = 6;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("file", o.file, "input graph file")->required();
    cmd->add_option("--seed", o.seed, "perturbation seed (attempt i uses seed+i)");
    cmd->add_option("--trials", o.trials, "perturbation attempts before giving up")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--denom-exponent", o.denom_exponent, "scale exponent a in D = n^a");
    cmd->add_option("--numer-exponent", o.numer_exponent, "noise exponent b, rho in [1, n^b]");
}

rcst::PerturbationConfig config_of(const CommonOpts& o) {
    rcst::PerturbationConfig cfg;
    cfg.seed = o.seed;
    cfg.denom_exponent = o.denom_exponent;
    cfg.numer_exponent = o.numer_exponent;
    return cfg;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"randomized routing cost spanning tree approximations"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "kv"}))
        ->capture_default_str();
    int threads = env_threads();
    app.add_option("--threads", threads,
                   "worker threads, 0 = hardware (RCST_THREADS overrides the default)");

    CommonOpts mrct_opts;
    std::string epsilon_str = "1";
    long long budget = 100000000;
    bool allow_repeats = false;
    CLI::App* mrct_cmd = app.add_subcommand("mrct", "approximate minimum routing cost tree");
    add_common(mrct_cmd, mrct_opts);
    mrct_cmd->add_option("--epsilon", epsilon_str, "accuracy parameter, a positive rational");
    mrct_cmd->add_option("--budget", budget, "largest admissible candidate count");
    mrct_cmd->add_flag("--allow-repeats", allow_repeats,
                       "enumerate repeated-vertex sequences too (slower, same result)");

    CommonOpts sroct_opts;
    CLI::App* sroct_cmd =
        app.add_subcommand("sroct", "approximate sum-requirement optimal communication tree");
    add_common(sroct_cmd, sroct_opts);

    CommonOpts w2_opts;
    long long s1 = -1, s2 = -1;
    std::string lambda_str;
    CLI::App* w2_cmd = app.add_subcommand("w2mrct", "approximate weighted two-source tree");
    add_common(w2_cmd, w2_opts);
    w2_cmd->add_option("--s1", s1, "first source (overrides the file)");
    w2_cmd->add_option("--s2", s2, "second source (overrides the file)");
    w2_cmd->add_option("--lambda", lambda_str, "source weight ratio p/q >= 1 (overrides the file)");

    CommonOpts cu_opts;
    CLI::App* cu_cmd =
        app.add_subcommand("check-unique", "perturb once and test strong min-uniqueness");
    add_common(cu_cmd, cu_opts);

    std::string exact_variant;
    std::string exact_file;
    long long cap = 10000000;
    CLI::App* exact_cmd = app.add_subcommand("exact", "brute force optimum by full enumeration");
    exact_cmd->add_option("variant", exact_variant, "one of mrct, sroct, w2mrct")
        ->required()
        ->check(CLI::IsMember({"mrct", "sroct", "w2mrct"}));
    exact_cmd->add_option("file", exact_file, "input graph file")->required();
    exact_cmd->add_option("--cap", cap, "enumeration cap (hard error beyond)");

    std::string cost_file, tree_file;
    CLI::App* cost_cmd = app.add_subcommand("cost", "evaluate cost functionals of a given tree");
    cost_cmd->add_option("file", cost_file, "input graph file")->required();
    cost_cmd->add_option("--tree", tree_file, "tree file (tree/edge lines)")->required();

    std::string exp_file;
    CLI::App* exp_cmd = app.add_subcommand("experiment", "run a JSON experiment spec");
    exp_cmd->add_option("file", exp_file, "experiment spec (json)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    const rcst::OutputFormat fmt = parse_format(format);
    try {
        if (*mrct_cmd) {
            rcst::Graph g = load_graph(mrct_opts.file);
            rcst::ApproxParams params;
            params.epsilon = rcst::parse_rational(epsilon_str);
            params.budget = budget;
            params.threads = threads;
            params.include_repeated_sequences = allow_repeats;
            auto run = rcst::run_mrct(g, params, config_of(mrct_opts), mrct_opts.trials);
            std::cout << rcst::render_mrct(g, run.outcome, run.info, fmt);
            return run.outcome.status == rcst::SolveStatus::fail ? 3 : 0;
        }
        if (*sroct_cmd) {
            rcst::Graph g = load_graph(sroct_opts.file);
            auto run = rcst::run_sroct(g, config_of(sroct_opts), threads, sroct_opts.trials);
            std::cout << rcst::render_sroct(g, run.outcome, run.info, fmt);
            return run.outcome.status == rcst::SolveStatus::fail ? 3 : 0;
        }
        if (*w2_cmd) {
            rcst::Graph g = load_graph(w2_opts.file);
            rcst::TwoSourceSpec spec;
            if (g.sources()) spec = *g.sources();
            if (s1 >= 0) spec.s1 = static_cast<int>(s1);
            if (s2 >= 0) spec.s2 = static_cast<int>(s2);
            if (!lambda_str.empty()) {
                rcst::Rational lambda = rcst::parse_rational(lambda_str);
                if (!lambda.positive() || lambda.num < lambda.den)
                    throw rcst::InvariantError("lambda must be a rational at least 1");
                if (lambda.num > (static_cast<rcst::int128>(1) << 62))
                    throw rcst::InvariantError("lambda numerator too large");
                spec.p = static_cast<long long>(lambda.num);
                spec.q = static_cast<long long>(lambda.den);
            }
            if (!g.sources() && (s1 < 0 || s2 < 0))
                throw rcst::InvariantError(
                    "no sources: provide a 'sources' line in the file or --s1/--s2");
            auto run = rcst::run_w2mrct(g, spec, config_of(w2_opts), threads, w2_opts.trials);
            std::cout << rcst::render_w2(g, run.outcome, run.info, fmt);
            return run.outcome.status == rcst::SolveStatus::fail ? 3 : 0;
        }
        if (*cu_cmd) {
            rcst::Graph g = load_graph(cu_opts.file);
            if (!rcst::is_connected(g)) {
                if (fmt == rcst::OutputFormat::kv) std::cout << "status disconnected\n";
                std::cout << "disconnected\n";
                return 0;
            }
            rcst::ScaledWeights sw = rcst::perturb(g, config_of(cu_opts));
            rcst::UniquenessReport rep = rcst::check_strong_min_unique(sw, threads);
            std::cout << rcst::render_unique(rep, fmt);
            return 0;
        }
        if (*exact_cmd) {
            rcst::Graph g = load_graph(exact_file);
            if (exact_variant == "mrct") {
                std::cout << rcst::render_exact(g, rcst::exact_mrct(g, cap), "routing", fmt);
            } else if (exact_variant == "sroct") {
                std::cout << rcst::render_exact(g, rcst::exact_sroct(g, cap), "src", fmt);
            } else {
                if (!g.sources())
                    throw rcst::InvariantError("exact w2mrct needs a 'sources' line in the file");
                std::cout << rcst::render_exact(g, rcst::exact_w2mrct(g, *g.sources(), cap),
                                                "two-source", fmt);
            }
            return 0;
        }
        if (*cost_cmd) {
            rcst::Graph g = load_graph(cost_file);
            rcst::SpanningTree t = load_tree(tree_file, g);
            rcst::EdgeWeights w = rcst::EdgeWeights::original(g);
            if (fmt == rcst::OutputFormat::text) {
                std::cout << "cost routing " << rcst::to_string(rcst::routing_cost_edges(t, w).value())
                          << "\n";
                std::cout << "cost src " << rcst::to_string(rcst::src_cost(t, w).value()) << "\n";
                if (g.sources())
                    std::cout << "cost two-source "
                              << rcst::to_string(rcst::two_source_cost(t, w, *g.sources()).value())
                              << "\n";
            } else {
                std::cout << "cost-routing " << rcst::to_string(rcst::routing_cost_edges(t, w).value())
                          << "\n";
                std::cout << "cost-src " << rcst::to_string(rcst::src_cost(t, w).value()) << "\n";
                if (g.sources())
                    std::cout << "cost-two-source "
                              << rcst::to_string(rcst::two_source_cost(t, w, *g.sources()).value())
                              << "\n";
            }
            return 0;
        }
        if (*exp_cmd) {
            std::ifstream in(exp_file);
            if (!in) throw rcst::ParseError(0, "cannot open '" + exp_file + "'");
            nlohmann::json spec;
            try {
                in >> spec;
            } catch (const nlohmann::json::exception& e) {
                throw rcst::ParseError(0, std::string("bad experiment json: ") + e.what());
            }
            return rcst::run_experiments(spec, std::cout, threads) ? 0 : 5;
        }
    } catch (const rcst::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const rcst::ConstructionInvalidError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const rcst::Error& e) {
        // invariant violations, overflow refusals, cap and budget refusals,
        // non-tree inputs
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
