#pragma once

#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kvc/kvc.hpp"

// The kvc command line. run_cli is kept separate from main so tests can drive it.

namespace kvc::cli {

enum Exit { ok = 0, violation = 1, bad_input = 2, refused = 3 };

using io::json;

struct Context {
    std::ostream& out;
    std::ostream& err;
    bool force = false;
    std::vector<std::string> warnings;

    void emit(json j)
    {
        if (!warnings.empty()) j["warnings"] = warnings;
        out << io::dump(j);
    }
    void warn_forced(const std::string& what)
    {
        warnings.push_back("guard overridden by --force: " + what);
        err << "warning: guard overridden by --force: " << what << "\n";
    }
};

inline void write_text(const std::string& path, const std::string& text)
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw input_error(path + ": cannot write file");
    f << text;
}

inline SearchOptions search_options(Context& ctx, std::int64_t budget, bool twins)
{
    SearchOptions o;
    o.twin_pruning = twins;
    if (budget > 0) o.node_budget = budget;
    if (ctx.force) {
        o.node_budget = std::numeric_limits<std::int64_t>::max();
        o.call_budget = std::numeric_limits<std::int64_t>::max();
        o.realize.general_k_budget = std::numeric_limits<std::int64_t>::max();
        ctx.warn_forced("search node budgets");
    }
    return o;
}

inline int vc_compute(Context& ctx, const std::string& path, int k, const std::string& mode, int s,
                      std::int64_t budget, bool twins)
{
    const Graph g = io::read_graph(path);
    const SearchOptions opts = search_options(ctx, budget, twins);
    if (mode == "decision") {
        if (s < 1) throw precondition_error("--mode decision needs --s >= 1");
        const DecisionResult d = vc_at_least(g, k, s, opts);
        json j{{"k", k}, {"s", s}, {"holds", d.holds}, {"search_stats", io::stats_to_json(d.stats)}};
        j["witness"] = d.witness ? json(d.witness->members()) : json(nullptr);
        ctx.emit(j);
        return ok;
    }
    const VCResult r = vc_dimension(g, k, opts);
    json j = io::vc_result_to_json(r);
    j["k"] = k;
    ctx.emit(j);
    return ok;
}

inline int vc_shattered(Context& ctx, const std::string& path, int k, const std::string& set, bool oracle,
                        bool compressed)
{
    const Graph g = io::read_graph(path);
    const VertexSet a = io::parse_vertex_list(set);
    require_valid(g, a, "--set");
    json j{{"A", a.members()}, {"k", k}};
    if (oracle) {
        OracleLimits limits;
        if (ctx.force) {
            limits.max_set = 30;
            limits.max_order = 30;
            ctx.warn_forced("brute-force oracle limits");
        }
        j["method"] = "bruteforce";
        j["shattered"] = is_shattered_bruteforce(g, a, k, limits);
        ctx.emit(j);
        return ok;
    }
    ShatterOptions so;
    so.certificate = true;
    so.twin_compression = compressed;
    const ShatterCheck c = check_shattered_poly(g, a, k, so);
    j["method"] = compressed ? "poly-compressed" : "poly";
    j["shattered"] = c.shattered;
    j["traces_checked"] = c.traces_checked;
    j["certificate"] = c.certificate ? io::certificate_to_json(*c.certificate) : json(nullptr);
    j["failing_trace"] = c.failing_trace ? json(c.failing_trace->members()) : json(nullptr);
    if (c.certificate && !validate_certificate(g, *c.certificate).valid) {
        ctx.emit(j);
        ctx.err << "error: certificate failed re-validation\n";
        return violation;
    }
    ctx.emit(j);
    return ok;
}

inline TreeMode tree_mode(const std::string& s)
{
    if (s == "exact") return TreeMode::exact;
    if (s == "greedy") return TreeMode::greedy;
    throw input_error("unknown tree mode \"" + s + "\"");
}

inline TreeSearchLimits tree_limits(Context& ctx)
{
    TreeSearchLimits l;
    if (ctx.force) {
        l.node_budget = std::numeric_limits<std::int64_t>::max();
        ctx.warn_forced("spanning tree search budget");
    }
    return l;
}

inline int bounds_cmd(Context& ctx, const std::string& path, int k, const std::string& mode, bool per_component)
{
    const Graph g = io::read_graph(path);
    if (!per_component) {
        if (!is_connected(g)) throw precondition_error("bounds need a connected graph (see --per-component)");
        ctx.emit(io::bound_report_to_json(make_bound_report(g, k, tree_mode(mode), tree_limits(ctx))));
        return ok;
    }
    const Components comps = components(g);
    json reports = json::array();
    std::optional<int> max_upper;
    int max_turan = std::numeric_limits<int>::min();
    for (int c = 0; c < comps.count; ++c) {
        std::vector<Vertex> members;
        for (Vertex v = 0; v < g.order(); ++v)
            if (comps.id[static_cast<std::size_t>(v)] == c) members.push_back(v);
        const auto sub = induced_subgraph(g, VertexSet(members));
        if (sub.graph.order() < 2) continue;
        const BoundReport r = make_bound_report(sub.graph, k, tree_mode(mode), tree_limits(ctx));
        json j = io::bound_report_to_json(r);
        j["vertices"] = members;
        reports.push_back(std::move(j));
        if (r.upper_kcon) max_upper = std::max(max_upper.value_or(*r.upper_kcon), *r.upper_kcon);
        max_turan = std::max(max_turan, r.lower_turan);
    }
    json out{{"components", reports}};
    out["max_upper_kcon"] = max_upper ? json(*max_upper) : json(nullptr);
    out["max_lower_turan"] = reports.empty() ? json(nullptr) : json(max_turan);
    ctx.emit(out);
    return ok;
}

inline int mls_cmd(Context& ctx, const std::string& path, const std::string& mode)
{
    const Graph g = io::read_graph(path);
    const SpanningTreeResult t = max_leaf_spanning_tree(g, tree_mode(mode), tree_limits(ctx));
    if (!is_spanning_tree(g, t.parent)) {
        ctx.err << "error: produced parent array is not a spanning tree\n";
        return violation;
    }
    ctx.emit(io::spanning_tree_to_json(t));
    return ok;
}

inline sat::SolveLimits solve_limits(Context& ctx)
{
    sat::SolveLimits l;
    if (ctx.force) {
        l.max_vars = std::numeric_limits<int>::max();
        ctx.warn_forced("1-in-3 solver variable limit");
    }
    return l;
}

inline int sat_solve(Context& ctx, const std::string& path)
{
    const io::FormulaFile f = io::read_formula(path);
    const auto a = sat::solve_1in3(f.formula, solve_limits(ctx));
    json j{{"satisfiable", a.has_value()}};
    j["assignment"] = a ? io::assignment_to_json(*a) : json(nullptr);
    if (a && !sat::eval_1in3(f.formula, *a)) {
        ctx.err << "error: solver returned a non-model\n";
        return violation;
    }
    ctx.emit(j);
    return ok;
}

inline int sat_monotone(Context& ctx, const std::string& path)
{
    const io::FormulaFile f = io::read_formula(path);
    const auto r = sat::make_monotone(f.formula, f.require_layout());
    json j = io::formula_to_json(r.formula, &r.layout);
    j["steps"] = r.steps;
    if (!sat::is_monotone(r.formula) || !sat::validate_layout(r.formula, r.layout).empty()) {
        ctx.emit(j);
        ctx.err << "error: conversion output is not a valid monotone layout\n";
        return violation;
    }
    ctx.emit(j);
    return ok;
}

inline int reduce_multicover(Context& ctx, const std::string& path, int k, int t, bool verify,
                             const std::string& dot, const std::string& out_path)
{
    MulticoverInstance inst = io::parse_multicover_json(io::read_file(path), path);
    if (k > 0) inst.k = k;
    if (t >= 0) inst.t = t;
    const GadgetGraph gg = multicover_to_graph(inst);
    if (!dot.empty()) write_text(dot, io::gadget_graph_to_dot(gg));
    if (!out_path.empty()) write_text(out_path, io::dump(io::gadget_graph_to_json(gg)));
    if (!verify) {
        ctx.emit(io::gadget_graph_to_json(gg));
        return ok;
    }
    const auto r = verify_multicover_reduction(inst, search_options(ctx, 0, true));
    json j{{"order", r.order},
           {"threshold", r.threshold},
           {"multicover_yes", r.cover.has_value()},
           {"vc_at_least", r.vc_holds},
           {"agreement", r.agreement}};
    j["cover"] = r.cover ? json(*r.cover) : json(nullptr);
    j["search_witness"] = r.search_witness ? json(r.search_witness->members()) : json(nullptr);
    j["shattered_set"] = r.shattered_set ? json(r.shattered_set->members()) : json(nullptr);
    j["certificate"] = r.certificate ? io::certificate_to_json(*r.certificate) : json(nullptr);
    if (r.cover) {
        j["certificate_valid"] = r.certificate_valid;
        j["poly_check"] = r.poly_check;
    }
    ctx.emit(j);
    const bool good = r.agreement && (!r.cover || (r.certificate_valid && r.poly_check));
    if (!good) ctx.err << "error: reduction check failed\n";
    return good ? ok : violation;
}

inline int reduce_planar(Context& ctx, const std::string& path, int p, bool verify_forward, const std::string& dot,
                         const std::string& out_path, int spot_checks, std::uint64_t seed)
{
    const io::FormulaFile f = io::read_formula(path);
    const GadgetGraph gg = monotone1in3_to_planar_graph(f.formula, f.require_layout(), p);
    if (!dot.empty()) write_text(dot, io::gadget_graph_to_dot(gg));
    if (!out_path.empty()) write_text(out_path, io::dump(io::gadget_graph_to_json(gg)));
    if (!verify_forward) {
        ctx.emit(io::gadget_graph_to_json(gg));
        return ok;
    }
    const auto a = sat::solve_1in3(f.formula, solve_limits(ctx));
    if (!a) throw precondition_error("formula is not 1-in-3 satisfiable; the forward direction needs a model");
    const auto r = verify_planar_forward(f.formula, *f.layout, *a, p, spot_checks, seed);
    json j{{"order", r.order},
           {"threshold", r.threshold},
           {"p", gg.p},
           {"faithful_p", gg.faithful_p},
           {"assignment", io::assignment_to_json(*a)},
           {"planar", r.planar},
           {"removed_size", r.removed_size},
           {"shattered_size", r.shattered_size},
           {"structure_problems", r.structure_problems},
           {"shattered", r.shattered},
           {"traces_checked", r.traces_checked},
           {"certificate_valid", r.certificate_valid},
           {"spot_checks", r.spot_checks},
           {"spot_disagreements", r.spot_disagreements},
           {"round_trip", r.round_trip}};
    ctx.emit(j);
    const int m = static_cast<int>(f.formula.clauses.size()), n = f.formula.num_vars;
    const bool good = r.planar && r.structure_problems.empty() && r.shattered && r.certificate_valid &&
                      r.spot_disagreements == 0 && r.round_trip && r.removed_size == 5 * m + 6 * n &&
                      r.shattered_size == r.threshold;
    if (!good) ctx.err << "error: forward verification failed\n";
    return good ? ok : violation;
}

inline int bounds_sweep(Context& ctx, int max_n, int trials, std::uint64_t seed, int max_k)
{
    if (max_n < 2) throw precondition_error("--n must be at least 2");
    const auto graphs = corpus::random_connected_graphs(trials, 2, max_n, seed);
    struct Row {
        std::string text;
        bool ok = true;
    };
    const auto rows = parallel_map<std::vector<Row>>(graphs.size(), [&](std::size_t id) {
        const Graph& g = graphs[id];
        std::vector<Row> out;
        SearchOptions so;
        so.leaf_bound = false;
        for (int k = 1; k <= max_k; ++k) {
            const BoundReport b = make_bound_report(g, k, TreeMode::exact);
            const int vc = vc_dimension(g, k, so).dimension;
            bool good = vc >= b.lower_turan;
            if (k == 1) good = good && b.ell <= vc && vc <= b.ell + 1;
            else if (b.upper_kcon) good = good && vc <= *b.upper_kcon;
            if (b.lower_thm5) good = good && vc >= b.lower_thm5->ceil();
            std::ostringstream row;
            row << id << ',' << b.n << ',' << b.m << ',' << b.max_degree << ',' << b.ell << ',' << k << ',' << vc
                << ',' << (b.upper_kcon ? std::to_string(*b.upper_kcon) : "") << ',' << b.lower_turan << ','
                << (b.lower_thm5 ? b.lower_thm5->str() : "") << ',' << (good ? "ok" : "VIOLATION");
            out.push_back({row.str(), good});
        }
        return out;
    });
    ctx.out << "id,n,m,max_degree,ell,k,vc,upper_kcon,lower_turan,lower_thm5,status\n";
    bool all = true;
    for (const auto& per_graph : rows)
        for (const auto& r : per_graph) {
            ctx.out << r.text << '\n';
            all = all && r.ok;
        }
    if (!all) ctx.err << "error: at least one bound was violated\n";
    return all ? ok : violation;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"kvc: VC dimension of k-connected subgraph families"};
    app.require_subcommand(1);
    Context ctx{out, err, false, {}};
    app.add_flag("--force", ctx.force, "Override scale guards (adds a warning to the report)");

    std::string graph, formula, instance, set, mode = "exact", dot, out_path;
    int k = 1, s = 0, p = 0, t = -1, max_n = 8, trials = 100, max_k = 3, spot = 1000;
    std::int64_t budget = 0;
    std::uint64_t seed = 1;
    bool per_component = false, oracle = false, compressed = false, verify = false, verify_forward = false, no_twins = false;

    auto* vc = app.add_subcommand("vc", "VC dimension queries")->require_subcommand(1);
    auto* vc_compute_cmd = vc->add_subcommand("compute", "Exact VC dimension or the decision variant");
    vc_compute_cmd->add_option("--graph", graph, "Graph file (JSON or DIMACS)")->required();
    vc_compute_cmd->add_option("--k", k, "Connectivity k")->required()->check(CLI::PositiveNumber);
    vc_compute_cmd->add_option("--mode", mode, "exact | decision")->check(CLI::IsMember({"exact", "decision"}));
    vc_compute_cmd->add_option("--s", s, "Threshold for --mode decision");
    vc_compute_cmd->add_option("--budget", budget, "Search node budget");
    vc_compute_cmd->add_flag("--no-twins", no_twins, "Disable twin-class pruning");

    auto* vc_shattered_cmd = vc->add_subcommand("shattered", "Is a vertex set shattered?");
    vc_shattered_cmd->add_option("--graph", graph, "Graph file (JSON or DIMACS)")->required();
    vc_shattered_cmd->add_option("--k", k, "Connectivity k")->required()->check(CLI::PositiveNumber);
    vc_shattered_cmd->add_option("--set", set, "Comma-separated vertex ids")->required();
    vc_shattered_cmd->add_flag("--oracle", oracle, "Use the brute-force oracle");
    vc_shattered_cmd->add_flag("--compressed", compressed, "Check one trace per twin orbit");

    auto* bounds = app.add_subcommand("bounds", "Closed-form bounds for one graph");
    bounds->add_option("--graph", graph, "Graph file (JSON or DIMACS)")->required();
    bounds->add_option("--k", k, "Connectivity k")->required()->check(CLI::PositiveNumber);
    bounds->add_option("--tree", mode, "exact | greedy leaf count")->check(CLI::IsMember({"exact", "greedy"}));
    bounds->add_flag("--per-component", per_component, "Apply the bounds to each component separately");

    auto* mls = app.add_subcommand("mls", "Maximum-leaf spanning tree");
    mls->add_option("--graph", graph, "Graph file (JSON or DIMACS)")->required();
    mls->add_option("--mode", mode, "exact | greedy")->check(CLI::IsMember({"exact", "greedy"}));

    auto* satc = app.add_subcommand("sat", "1-in-3 SAT tools")->require_subcommand(1);
    auto* solve = satc->add_subcommand("solve1in3", "Lexicographically first 1-in-3 model");
    solve->add_option("--formula", formula, "Formula file (JSON or DIMACS CNF)")->required();
    auto* mono = satc->add_subcommand("monotone", "Convert a laid-out formula to a monotone one");
    mono->add_option("--formula", formula, "Formula JSON with layout")->required();

    auto* reduce = app.add_subcommand("reduce", "Hardness constructions")->require_subcommand(1);
    auto* mc = reduce->add_subcommand("multicover", "Set multicover instance to a graph");
    mc->add_option("--instance", instance, "Instance JSON")->required();
    mc->add_option("--k", k, "Coverage k (overrides the file)");
    mc->add_option("--t", t, "Budget t (overrides the file)");
    mc->add_flag("--verify", verify, "Solve both sides and compare");
    mc->add_option("--dot", dot, "Write a DOT drawing");
    mc->add_option("--out", out_path, "Write the gadget graph JSON");
    auto* planar = reduce->add_subcommand("planar", "Monotone laid-out 1-in-3 formula to a planar graph");
    planar->add_option("--formula", formula, "Formula JSON with layout")->required();
    planar->add_option("--p", p, "Leaf size override (not faithful)")->check(CLI::PositiveNumber);
    planar->add_flag("--verify-forward", verify_forward, "Encode the first model and check it is shattered");
    planar->add_option("--spot-checks", spot, "Uncompressed random trace checks");
    planar->add_option("--seed", seed, "Seed for the spot checks");
    planar->add_option("--dot", dot, "Write a DOT drawing");
    planar->add_option("--out", out_path, "Write the gadget graph JSON");

    auto* corpus_cmd = app.add_subcommand("corpus", "Corpus sweeps")->require_subcommand(1);
    auto* sweep = corpus_cmd->add_subcommand("bounds-sweep", "Check every bound on random connected graphs");
    sweep->add_option("--n", max_n, "Largest vertex count")->required();
    sweep->add_option("--trials", trials, "Number of graphs")->required();
    sweep->add_option("--seed", seed, "Random seed")->required();
    sweep->add_option("--max-k", max_k, "Largest k")->check(CLI::Range(1, 6));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    }

    try {
        if (vc_compute_cmd->parsed()) return vc_compute(ctx, graph, k, mode, s, budget, !no_twins);
        if (vc_shattered_cmd->parsed()) return vc_shattered(ctx, graph, k, set, oracle, compressed);
        if (bounds->parsed()) return bounds_cmd(ctx, graph, k, mode, per_component);
        if (mls->parsed()) return mls_cmd(ctx, graph, mode);
        if (solve->parsed()) return sat_solve(ctx, formula);
        if (mono->parsed()) return sat_monotone(ctx, formula);
        if (mc->parsed()) return reduce_multicover(ctx, instance, mc->count("--k") ? k : 0, t, verify, dot, out_path);
        if (planar->parsed()) return reduce_planar(ctx, formula, p, verify_forward, dot, out_path, spot, seed);
        if (sweep->parsed()) return bounds_sweep(ctx, max_n, trials, seed, max_k);
    } catch (const scale_error& e) {
        err << "refused: " << e.what() << " (use --force to override)\n";
        return refused;
    } catch (const error& e) {
        err << "error: " << e.what() << "\n";
        return bad_input;
    }
    err << "error: no command\n";
    return bad_input;
}

} // namespace kvc::cli
