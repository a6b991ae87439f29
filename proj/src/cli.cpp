#include "stepkernel/cli.hpp"

#include <chrono>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "CLI11.hpp"
#include "stepkernel/exact_probs.hpp"
#include "stepkernel/graphs_ust.hpp"
#include "stepkernel/io.hpp"
#include "stepkernel/refine.hpp"
#include "stepkernel/simulate.hpp"

namespace stepkernel {

namespace {

nlohmann::json input_entry(const std::string& path) {
    return {{"path", path}, {"fnv1a64", fnv1a64_hex_file(path)}};
}

nlohmann::json rat_array(const std::vector<Rat>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& r : v) a.push_back(rat_to_string(r));
    return a;
}

nlohmann::json rat_matrix(const RatMatrix& m) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& row : m) a.push_back(rat_array(row));
    return a;
}

nlohmann::json double_array(const std::vector<double>& v) {
    nlohmann::json a = nlohmann::json::array();
    for (double x : v) a.push_back(jround(x));
    return a;
}

nlohmann::json grouped_json(const GroupedDecision& d) {
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : d.groups) {
        groups.push_back({{"components_a", g.u_components},
                          {"components_b", g.w_components},
                          {"mass_a", rat_to_string(g.mass_u)},
                          {"mass_b", rat_to_string(g.mass_w)}});
    }
    return {{"iso", d.iso},
            {"isolated_mass_a", rat_to_string(d.isolated_mass_u)},
            {"isolated_mass_b", rat_to_string(d.isolated_mass_w)},
            {"groups", groups}};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact decision and simulation toolkit for finite-type kernels"};
    app.require_subcommand(1);

    std::string path_a, path_b, out_path;
    std::string mode = "frac", process = "x", tree_code, exact_against = "none";
    std::string emit_markov, emit_heart;
    bool as_graph = false;
    int depth = 1, max_vertices = 8, max_height = 4, radius = 1, gsize = 0;
    int threads = 1, roots_per_graph = 1;
    long long samples = 0, graphs = 0, max_nodes = 1000000;
    std::uint64_t seed = 0;
    double tol = 1e-9;

    auto* fi = app.add_subcommand("fi", "decide fractional isomorphism of two kernels");
    fi->add_option("a", path_a, "first kernel file")->required();
    fi->add_option("b", path_b, "second kernel file")->required();
    fi->add_option("--mode", mode, "frac | proj | piecewise | factor")
        ->check(CLI::IsMember({"frac", "proj", "piecewise", "factor"}));
    fi->add_option("--out", out_path, "also write the report to this file");

    auto* gfi = app.add_subcommand("graph_fi", "decide fractional isomorphism of two graphs");
    gfi->add_option("a", path_a, "first graph file")->required();
    gfi->add_option("b", path_b, "second graph file")->required();
    gfi->add_option("--mode", mode, "frac | factor")->check(CLI::IsMember({"frac", "factor"}));
    gfi->add_option("--out", out_path, "also write the report to this file");

    auto* refine_cmd = app.add_subcommand("refine", "iterated degree refinement and template");
    refine_cmd->add_option("a", path_a, "kernel (or graph) file")->required();
    refine_cmd->add_flag("--graph", as_graph, "treat the input as a graph file");
    refine_cmd->add_option("--out", out_path, "also write the report to this file");

    auto* comp = app.add_subcommand("components", "connected components and derived kernels");
    comp->add_option("a", path_a, "kernel file")->required();
    comp->add_option("--emit-markov", emit_markov, "write the column-renormalized kernel here");
    comp->add_option("--emit-heart", emit_heart,
                     "write the per-component degree-one rescaling here");
    comp->add_option("--out", out_path, "also write the report to this file");

    auto* cw = app.add_subcommand("cw", "norm, degree range, and branching constant");
    cw->add_option("a", path_a, "kernel file")->required();
    cw->add_option("--out", out_path, "also write the report to this file");

    auto* tp = app.add_subcommand("tree_prob", "exact ball probabilities of the tree processes");
    tp->add_option("a", path_a, "kernel file")->required();
    tp->add_option("--process", process, "x (rooted run) | u (run seen from a non-root vertex)")
        ->check(CLI::IsMember({"x", "u"}));
    tp->add_option("--depth", depth, "ball radius")->required()->check(CLI::NonNegativeNumber);
    tp->add_option("--tree", tree_code, "single ball shape, e.g. \"((())())\"");
    tp->add_option("--max-vertices", max_vertices, "catalog size for the full distribution");
    tp->add_option("--out", out_path, "also write the report to this file");

    auto* surv = app.add_subcommand("survival", "exact survival probabilities per type");
    surv->add_option("a", path_a, "kernel file")->required();
    surv->add_option("--tol", tol, "residual tolerance");
    surv->add_option("--out", out_path, "also write the report to this file");

    auto* sep = app.add_subcommand("separate", "search for a ball that tells two kernels apart");
    sep->add_option("a", path_a, "first kernel file")->required();
    sep->add_option("b", path_b, "second kernel file")->required();
    sep->add_option("--max-height", max_height, "largest ball height scanned");
    sep->add_option("--max-vertices", max_vertices, "largest ball size scanned");
    sep->add_option("--out", out_path, "also write the report to this file");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo runs of the branching processes");
    sim->add_option("a", path_a, "kernel file")->required();
    sim->add_option("--process", process, "x | u | xdagger")
        ->check(CLI::IsMember({"x", "u", "xdagger"}));
    sim->add_option("--samples", samples, "number of independent runs")
        ->required()
        ->check(CLI::PositiveNumber);
    sim->add_option("--depth", depth, "ball radius recorded per run")
        ->required()
        ->check(CLI::NonNegativeNumber);
    sim->add_option("--seed", seed, "base seed; runs are reproducible")->required();
    sim->add_option("--horizon", gsize, "generations to track (default: depth)");
    sim->add_option("--max-nodes", max_nodes, "per-run node budget");
    sim->add_option("--threads", threads, "worker threads (does not change results)");
    sim->add_option("--out", out_path, "also write the report to this file");

    auto* ust = app.add_subcommand("ust", "ball statistics of spanning trees of sampled graphs");
    ust->add_option("a", path_a, "kernel file")->required();
    ust->add_option("--n", gsize, "graph size")->required()->check(CLI::PositiveNumber);
    ust->add_option("--radius", radius, "ball radius")->required()->check(CLI::NonNegativeNumber);
    ust->add_option("--graphs", graphs, "graphs to sample")
        ->required()
        ->check(CLI::PositiveNumber);
    ust->add_option("--seed", seed, "base seed; draws are reproducible")->required();
    ust->add_option("--roots-per-graph", roots_per_graph,
                    "roots drawn per tree (more than one correlates samples)");
    ust->add_option("--threads", threads, "worker threads (does not change results)");
    ust->add_option("--exact", exact_against, "also compute the exact ball law: u | x | none")
        ->check(CLI::IsMember({"u", "x", "none"}));
    ust->add_option("--out", out_path, "also write the report to this file");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("stepkernel");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    const auto t0 = std::chrono::steady_clock::now();
    nlohmann::json report;
    report["argv"] = args;
    nlohmann::json inputs = nlohmann::json::array();
    nlohmann::json options = nlohmann::json::object();
    nlohmann::json results = nlohmann::json::object();
    int exit_code = 0;

    try {
        if (*fi) {
            report["command"] = "fi";
            inputs.push_back(input_entry(path_a));
            inputs.push_back(input_entry(path_b));
            options["mode"] = mode;
            ParsedKernel A = load_kernel_file(path_a), B = load_kernel_file(path_b);
            results["mode"] = mode;
            if (mode == "frac") {
                FracIsoResult r = frac_iso(A.akernel, B.akernel);
                results["iso"] = r.iso;
                if (r.iso) {
                    results["class_mass_a"] = rat_array(r.class_mass_u);
                    results["class_mass_b"] = rat_array(r.class_mass_w);
                }
                exit_code = r.iso ? 0 : 1;
                err << "fractionally isomorphic: " << (r.iso ? "yes" : "no") << "\n";
            } else if (mode == "proj") {
                ProjFracIsoResult r = proj_frac_iso(A.akernel, B.akernel);
                results["iso"] = r.iso;
                results["scale"] = rat_to_string(r.t);
                exit_code = r.iso ? 0 : 1;
                err << "projectively fractionally isomorphic: " << (r.iso ? "yes" : "no")
                    << " (scale " << rat_to_string(r.t) << ")\n";
            } else {
                GroupedDecision d = mode == "piecewise"
                                        ? piecewise_proj_frac_iso(A.kernel(), B.kernel())
                                        : kernel_factor_check(A.kernel(), B.kernel());
                results.update(grouped_json(d));
                exit_code = d.iso ? 0 : 1;
                err << (mode == "piecewise" ? "piecewise projectively fractionally isomorphic: "
                                            : "factor kernels match: ")
                    << (d.iso ? "yes" : "no") << "\n";
            }
        } else if (*gfi) {
            report["command"] = "graph_fi";
            inputs.push_back(input_entry(path_a));
            inputs.push_back(input_entry(path_b));
            options["mode"] = mode;
            Graph A = load_graph_file(path_a), B = load_graph_file(path_b);
            results["mode"] = mode;
            bool iso;
            if (mode == "frac") {
                iso = practional_iso(A, B);
                results["iso"] = iso;
            } else {
                GroupedDecision d = graph_factor_check(A, B);
                results.update(grouped_json(d));
                iso = d.iso;
            }
            exit_code = iso ? 0 : 1;
            err << "fractionally isomorphic graphs: " << (iso ? "yes" : "no") << "\n";
        } else if (*refine_cmd) {
            report["command"] = "refine";
            inputs.push_back(input_entry(path_a));
            options["graph"] = as_graph;
            if (as_graph) {
                Graph G = load_graph_file(path_a);
                GraphRefineResult r = graph_equitable(G);
                results["classes"] = r.partition.color;
                results["num_classes"] = r.partition.num_colors;
                results["rounds"] = r.partition.rounds;
                results["template"] = {{"p", rat_array(r.tmpl.p)}, {"D", r.tmpl.D}};
                err << "stable after " << r.partition.rounds << " refinement rounds, "
                    << r.partition.num_colors << " classes\n";
            } else {
                ParsedKernel A = load_kernel_file(path_a);
                RefineResult r = refine(A.akernel);
                results["classes"] = r.partition.color;
                results["num_classes"] = r.partition.num_colors;
                results["rounds"] = r.partition.rounds;
                results["template"] = {{"p", rat_array(r.tmpl.p)}, {"D", rat_matrix(r.tmpl.D)}};
                err << "stable after " << r.partition.rounds << " refinement rounds, "
                    << r.partition.num_colors << " classes\n";
            }
        } else if (*comp) {
            report["command"] = "components";
            inputs.push_back(input_entry(path_a));
            if (!emit_markov.empty()) options["emit_markov"] = emit_markov;
            if (!emit_heart.empty()) options["emit_heart"] = emit_heart;
            ParsedKernel A = load_kernel_file(path_a);
            StepKernel K = A.kernel();
            ComponentDecomposition cd = components(K);
            results["isolated"] = cd.isolated;
            results["isolated_mass"] = rat_to_string(cd.isolated_mass);
            nlohmann::json comps = nlohmann::json::array();
            for (std::size_t c = 0; c < cd.components.size(); ++c)
                comps.push_back({{"types", cd.components[c]},
                                 {"mass", rat_to_string(cd.masses[c])}});
            results["components"] = comps;
            if (!emit_markov.empty()) {
                StepAkernel M = markov_renormalize(K);
                std::ofstream f(emit_markov);
                if (!f) throw std::invalid_argument("cannot write " + emit_markov);
                f << kernel_to_json(M, M.is_symmetric()).dump(2) << "\n";
                results["markov_written"] = emit_markov;
            }
            if (!emit_heart.empty()) {
                StepKernel H = heart(K);
                std::ofstream f(emit_heart);
                if (!f) throw std::invalid_argument("cannot write " + emit_heart);
                f << kernel_to_json(H, true).dump(2) << "\n";
                results["heart_written"] = emit_heart;
            }
            err << cd.components.size() << " components, " << cd.isolated.size()
                << " isolated types\n";
        } else if (*cw) {
            report["command"] = "cw";
            inputs.push_back(input_entry(path_a));
            ParsedKernel A = load_kernel_file(path_a);
            results["cw"] = jround(cw_constant(A.akernel));
            results["l1_norm"] = rat_to_string(A.akernel.l1_norm());
            results["min_degree"] = rat_to_string(A.akernel.min_degree());
            results["max_degree"] = rat_to_string(A.akernel.max_degree());
            bool clipped = A.akernel.max_entry() > 1;
            results["entries_exceed_one"] = clipped;
            err << "branching constant " << jround(cw_constant(A.akernel)) << "\n";
            if (clipped)
                err << "note: some entries exceed 1; dense graph sampling clips them\n";
        } else if (*tp) {
            report["command"] = "tree_prob";
            inputs.push_back(input_entry(path_a));
            options["process"] = process;
            options["depth"] = depth;
            ParsedKernel A = load_kernel_file(path_a);
            results["process"] = process;
            results["depth"] = depth;
            if (!tree_code.empty()) {
                options["tree"] = tree_code;
                RootedTree T = RootedTree::parse(tree_code);
                double p = process == "x" ? x_tree_prob(A.akernel, T, depth)
                                          : u_tree_prob(A.kernel(), T, depth);
                results["tree"] = T.code();
                results["prob"] = jround(p);
                err << "P[ball at depth " << depth << " is " << T.code() << "] = " << jround(p)
                    << "\n";
            } else {
                options["max_vertices"] = max_vertices;
                BallDistribution d = process == "x"
                                         ? x_ball_distribution(A.akernel, depth, max_vertices)
                                         : u_ball_distribution(A.kernel(), depth, max_vertices);
                results["max_vertices"] = max_vertices;
                results["distribution"] = ball_to_json(d);
                err << d.entries.size() << " ball shapes, residual " << jround(d.residual)
                    << "\n";
            }
        } else if (*surv) {
            report["command"] = "survival";
            inputs.push_back(input_entry(path_a));
            options["tol"] = jround(tol);
            ParsedKernel A = load_kernel_file(path_a);
            SurvivalResult r = survival(A.akernel, tol);
            results["survival"] = double_array(r.s);
            results["gamma"] = jround(r.gamma);
            results["residual"] = jround(r.residual);
            results["iterations"] = r.iterations;
            results["converged"] = r.converged;
            exit_code = r.converged ? 0 : 3;
            err << "survival probability " << jround(r.gamma)
                << (r.converged ? "" : " (did not converge)") << "\n";
        } else if (*sep) {
            report["command"] = "separate";
            inputs.push_back(input_entry(path_a));
            inputs.push_back(input_entry(path_b));
            options["max_height"] = max_height;
            options["max_vertices"] = max_vertices;
            ParsedKernel A = load_kernel_file(path_a), B = load_kernel_file(path_b);
            auto r = separating_tree_search(A.akernel, B.akernel, max_height, max_vertices);
            results["found"] = r.has_value();
            if (r) {
                results["tree"] = r->tree.code();
                results["depth"] = r->k;
                results["prob_a"] = jround(r->pu);
                results["prob_b"] = jround(r->pw);
                err << "separated by ball " << r->tree.code() << " at depth " << r->k << ": "
                    << jround(r->pu) << " vs " << jround(r->pw) << "\n";
            } else {
                err << "no separating ball within the scanned range\n";
            }
            exit_code = r ? 0 : 1;
        } else if (*sim) {
            report["command"] = "simulate";
            inputs.push_back(input_entry(path_a));
            SimConfig cfg;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.depth = depth;
            cfg.max_nodes = max_nodes;
            cfg.threads = threads;
            cfg.horizon = gsize;
            options["process"] = process;
            options["samples"] = samples;
            options["depth"] = depth;
            options["horizon"] = cfg.horizon == 0 ? depth : cfg.horizon;
            options["max_nodes"] = max_nodes;
            options["threads"] = threads;
            report["seed"] = seed;
            ParsedKernel A = load_kernel_file(path_a);
            SimReport r;
            if (process == "x")
                r = simulate_x(A.akernel, cfg);
            else if (process == "u")
                r = simulate_u(A.kernel(), cfg);
            else
                r = simulate_xdagger(A.kernel(), cfg);
            results["process"] = process;
            results["samples"] = r.samples;
            results["truncated_samples"] = r.truncated_samples;
            results["distribution"] = ball_to_json(r.distribution);
            results["extinct_by"] = double_array(r.extinct_by);
            results["mean_generation_size"] = double_array(r.mean_generation_size);
            err << r.samples << " runs, " << r.distribution.entries.size() << " ball shapes, "
                << r.truncated_samples << " truncated\n";
        } else if (*ust) {
            report["command"] = "ust";
            inputs.push_back(input_entry(path_a));
            UstConfig cfg;
            cfg.seed = seed;
            cfg.graphs = graphs;
            cfg.roots_per_graph = roots_per_graph;
            cfg.threads = threads;
            options["n"] = gsize;
            options["radius"] = radius;
            options["graphs"] = graphs;
            options["roots_per_graph"] = roots_per_graph;
            options["threads"] = threads;
            options["exact"] = exact_against;
            report["seed"] = seed;
            ParsedKernel A = load_kernel_file(path_a);
            StepKernel K = A.kernel();
            if (K.max_entry() > 1)
                err << "note: some entries exceed 1; dense sampling clips them\n";
            UstReport r = ust_ball_distribution(K, gsize, radius, cfg);
            results["n"] = gsize;
            results["radius"] = radius;
            results["graphs"] = r.graphs;
            results["distribution"] = ball_to_json(r.distribution);
            results["resampled_disconnected"] = r.resampled_disconnected;
            results["correlated_roots"] = r.correlated_roots;
            if (exact_against != "none") {
                int mv = 2;
                for (const auto& [code, p] : r.distribution.entries) {
                    (void)p;
                    mv = std::max(mv, RootedTree::parse(code).vertices());
                }
                BallDistribution ex = exact_against == "u"
                                          ? u_ball_distribution(K, radius, mv)
                                          : x_ball_distribution(K, radius, mv);
                results["exact"] = ball_to_json(ex);
                results["tv"] = jround(tv_distance(r.distribution, ex));
                err << "total variation against exact " << exact_against << "-law: "
                    << jround(tv_distance(r.distribution, ex)) << "\n";
            }
            err << r.graphs << " trees sampled, " << r.resampled_disconnected
                << " disconnected draws resampled\n";
        }
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }

    const auto t1 = std::chrono::steady_clock::now();
    report["inputs"] = inputs;
    report["options"] = options;
    report["results"] = results;
    report["wall_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    out << report.dump(2) << "\n";
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) {
            err << "error: cannot write " << out_path << "\n";
            return 2;
        }
        f << report.dump(2) << "\n";
    }
    return exit_code;
}

}  // namespace stepkernel
