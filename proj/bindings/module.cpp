#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "stepkernel/cli.hpp"
#include "stepkernel/exact_probs.hpp"
#include "stepkernel/graphs_ust.hpp"
#include "stepkernel/io.hpp"
#include "stepkernel/refine.hpp"
#include "stepkernel/simulate.hpp"

namespace py = pybind11;
using namespace stepkernel;

namespace {

std::vector<Rat> to_rats(const std::vector<std::string>& v) {
    std::vector<Rat> out;
    out.reserve(v.size());
    for (const auto& s : v) out.push_back(rat_from_string(s));
    return out;
}

RatMatrix to_rat_matrix(const std::vector<std::vector<std::string>>& m) {
    RatMatrix out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(to_rats(row));
    return out;
}

std::vector<std::string> from_rats(const std::vector<Rat>& v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& r : v) out.push_back(rat_to_string(r));
    return out;
}

std::vector<std::vector<std::string>> from_rat_matrix(const RatMatrix& m) {
    std::vector<std::vector<std::string>> out;
    out.reserve(m.size());
    for (const auto& row : m) out.push_back(from_rats(row));
    return out;
}

py::dict ball_to_dict(const BallDistribution& d) {
    py::dict entries;
    for (const auto& [code, p] : d.entries) entries[py::str(code)] = p;
    py::dict out;
    out["depth"] = d.depth;
    out["entries"] = entries;
    out["residual"] = d.residual;
    return out;
}

py::dict sim_to_dict(const SimReport& r) {
    py::dict out;
    out["distribution"] = ball_to_dict(r.distribution);
    out["samples"] = r.samples;
    out["truncated_samples"] = r.truncated_samples;
    out["extinct_by"] = r.extinct_by;
    out["mean_generation_size"] = r.mean_generation_size;
    return out;
}

SimConfig make_cfg(std::uint64_t seed, long long samples, int depth, int threads, int horizon,
                   long long max_nodes) {
    SimConfig cfg;
    cfg.seed = seed;
    cfg.samples = samples;
    cfg.depth = depth;
    cfg.threads = threads;
    cfg.horizon = horizon;
    cfg.max_nodes = max_nodes;
    return cfg;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "exact deciders and branching-process tools for finite-type kernels";

    py::class_<StepAkernel>(m, "Akernel")
        .def(py::init([](const std::vector<std::string>& mu,
                         const std::vector<std::vector<std::string>>& w) {
                 return StepAkernel(to_rats(mu), to_rat_matrix(w));
             }),
             py::arg("mu"), py::arg("w"))
        .def_property_readonly("n", &StepAkernel::n)
        .def_property_readonly("mu", [](const StepAkernel& k) { return from_rats(k.mu); })
        .def_property_readonly("w", [](const StepAkernel& k) { return from_rat_matrix(k.w); })
        .def("degrees", [](const StepAkernel& k) { return from_rats(k.degrees()); })
        .def("l1_norm", [](const StepAkernel& k) { return rat_to_string(k.l1_norm()); })
        .def("min_degree", [](const StepAkernel& k) { return rat_to_string(k.min_degree()); })
        .def("is_symmetric", &StepAkernel::is_symmetric)
        .def("cw", [](const StepAkernel& k) { return cw_constant(k); })
        .def("__repr__", [](const StepAkernel& k) {
            std::ostringstream s;
            s << "<Akernel n=" << k.n() << ">";
            return s.str();
        });

    py::class_<StepKernel, StepAkernel>(m, "Kernel")
        .def(py::init([](const std::vector<std::string>& mu,
                         const std::vector<std::vector<std::string>>& w) {
                 return StepKernel(to_rats(mu), to_rat_matrix(w));
             }),
             py::arg("mu"), py::arg("w"))
        .def("__repr__", [](const StepKernel& k) {
            std::ostringstream s;
            s << "<Kernel n=" << k.n() << ">";
            return s.str();
        });

    m.def("load_kernel", [](const std::string& path) -> py::object {
        ParsedKernel pk = load_kernel_file(path);
        if (pk.symmetric) return py::cast(pk.kernel());
        return py::cast(pk.akernel);
    });

    m.def(
        "frac_iso",
        [](const StepAkernel& a, const StepAkernel& b) { return frac_iso(a, b).iso; },
        py::arg("a"), py::arg("b"));
    m.def(
        "proj_frac_iso",
        [](const StepAkernel& a, const StepAkernel& b) {
            auto r = proj_frac_iso(a, b);
            return py::make_tuple(r.iso, rat_to_string(r.t));
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "piecewise_proj_frac_iso",
        [](const StepKernel& a, const StepKernel& b) { return piecewise_proj_frac_iso(a, b).iso; },
        py::arg("a"), py::arg("b"));
    m.def(
        "kernel_factor_check",
        [](const StepKernel& a, const StepKernel& b) { return kernel_factor_check(a, b).iso; },
        py::arg("a"), py::arg("b"));

    m.def("refine", [](const StepAkernel& a) {
        RefineResult r = refine(a);
        py::dict out;
        out["classes"] = r.partition.color;
        out["num_classes"] = r.partition.num_colors;
        out["rounds"] = r.partition.rounds;
        out["p"] = from_rats(r.tmpl.p);
        out["D"] = from_rat_matrix(r.tmpl.D);
        return out;
    });

    m.def("markov_renormalize",
          [](const StepKernel& k) { return markov_renormalize(k); });
    m.def("heart", [](const StepKernel& k) { return heart(k); });
    m.def("scale", [](const StepKernel& k, const std::string& t) {
        return scale(k, rat_from_string(t));
    });
    m.def("components", [](const StepKernel& k) {
        ComponentDecomposition cd = components(k);
        py::list comps;
        for (std::size_t c = 0; c < cd.components.size(); ++c) {
            py::dict d;
            d["types"] = cd.components[c];
            d["mass"] = rat_to_string(cd.masses[c]);
            comps.append(d);
        }
        py::dict out;
        out["isolated"] = cd.isolated;
        out["isolated_mass"] = rat_to_string(cd.isolated_mass);
        out["components"] = comps;
        return out;
    });

    m.def(
        "x_tree_prob",
        [](const StepAkernel& a, const std::string& code, int k) {
            return x_tree_prob(a, RootedTree::parse(code), k);
        },
        py::arg("kernel"), py::arg("tree"), py::arg("depth"));
    m.def(
        "u_tree_prob",
        [](const StepKernel& a, const std::string& code, int r) {
            return u_tree_prob(a, RootedTree::parse(code), r);
        },
        py::arg("kernel"), py::arg("tree"), py::arg("depth"));
    m.def(
        "x_ball_distribution",
        [](const StepAkernel& a, int k, int max_vertices) {
            return ball_to_dict(x_ball_distribution(a, k, max_vertices));
        },
        py::arg("kernel"), py::arg("depth"), py::arg("max_vertices") = 8);
    m.def(
        "u_ball_distribution",
        [](const StepKernel& a, int r, int max_vertices) {
            return ball_to_dict(u_ball_distribution(a, r, max_vertices));
        },
        py::arg("kernel"), py::arg("depth"), py::arg("max_vertices") = 8);

    m.def(
        "survival",
        [](const StepAkernel& a, double tol) {
            SurvivalResult r = survival(a, tol);
            py::dict out;
            out["s"] = r.s;
            out["gamma"] = r.gamma;
            out["residual"] = r.residual;
            out["iterations"] = r.iterations;
            out["converged"] = r.converged;
            return out;
        },
        py::arg("kernel"), py::arg("tol") = 1e-9);

    m.def(
        "separating_tree_search",
        [](const StepAkernel& a, const StepAkernel& b, int max_height,
           int max_vertices) -> py::object {
            auto r = separating_tree_search(a, b, max_height, max_vertices);
            if (!r) return py::none();
            py::dict out;
            out["tree"] = r->tree.code();
            out["depth"] = r->k;
            out["prob_a"] = r->pu;
            out["prob_b"] = r->pw;
            return out;
        },
        py::arg("a"), py::arg("b"), py::arg("max_height") = 4, py::arg("max_vertices") = 8);

    m.def(
        "simulate",
        [](py::object kernel, const std::string& process, long long samples, int depth,
           std::uint64_t seed, int threads, int horizon, long long max_nodes) {
            SimConfig cfg = make_cfg(seed, samples, depth, threads, horizon, max_nodes);
            if (process == "x") return sim_to_dict(simulate_x(kernel.cast<StepAkernel>(), cfg));
            if (process == "u") return sim_to_dict(simulate_u(kernel.cast<StepKernel>(), cfg));
            if (process == "xdagger")
                return sim_to_dict(simulate_xdagger(kernel.cast<StepKernel>(), cfg));
            throw std::invalid_argument("process must be x, u, or xdagger");
        },
        py::arg("kernel"), py::arg("process"), py::arg("samples"), py::arg("depth"),
        py::arg("seed"), py::arg("threads") = 1, py::arg("horizon") = 0,
        py::arg("max_nodes") = 1000000);

    m.def(
        "ust_ball_distribution",
        [](const StepKernel& k, int n, int radius, long long graphs, std::uint64_t seed,
           int roots_per_graph, int threads) {
            UstConfig cfg;
            cfg.seed = seed;
            cfg.graphs = graphs;
            cfg.roots_per_graph = roots_per_graph;
            cfg.threads = threads;
            UstReport r = ust_ball_distribution(k, n, radius, cfg);
            py::dict out;
            out["distribution"] = ball_to_dict(r.distribution);
            out["graphs"] = r.graphs;
            out["resampled_disconnected"] = r.resampled_disconnected;
            out["correlated_roots"] = r.correlated_roots;
            return out;
        },
        py::arg("kernel"), py::arg("n"), py::arg("radius"), py::arg("graphs"), py::arg("seed"),
        py::arg("roots_per_graph") = 1, py::arg("threads") = 1);

    m.def(
        "enumerate_trees",
        [](int max_height, int max_vertices) {
            std::vector<std::string> out;
            for (const auto& t : enumerate_trees(max_height, max_vertices))
                out.push_back(t.code());
            return out;
        },
        py::arg("max_height"), py::arg("max_vertices"));
    m.def("canonical_tree",
          [](const std::string& code) { return RootedTree::parse(code).code(); });

    m.def("run_cli", [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
    });
}
