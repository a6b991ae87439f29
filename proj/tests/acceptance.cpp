// Acceptance suite: twelve desk-scale checks of the library's core claims,
// one [PASS]/[FAIL] line each. Exits nonzero if any check fails. Tolerances
// are pinned here, next to the checks that use them.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "stepkernel/cli.hpp"
#include "stepkernel/exact_probs.hpp"
#include "stepkernel/graphs_ust.hpp"
#include "stepkernel/io.hpp"
#include "stepkernel/refine.hpp"
#include "stepkernel/simulate.hpp"

using namespace stepkernel;

namespace {

const std::string DATA = TEST_DATA_DIR;

Rat q(const char* s) { return rat_from_string(s); }

StepKernel uniform_one() { return StepKernel({q("1")}, {{q("1")}}); }
StepKernel two_type() {
    return StepKernel({q("1/2"), q("1/2")}, {{q("2"), q("1")}, {q("1"), q("0")}});
}
StepKernel block_13_7() {
    return StepKernel({q("1/5"), q("4/5")}, {{q("13"), q("0")}, {q("0"), q("7")}});
}

// ---- randomized construction helpers ---------------------------------------

Rat rand_positive_rat(Rng& r) {
    return Rat(static_cast<long>(1 + r.next_below(6))) /
           Rat(static_cast<long>(1 + r.next_below(4)));
}

std::vector<Rat> rand_masses(Rng& r, int n) {
    std::vector<Rat> mu(n);
    Rat total = 0;
    for (auto& m : mu) {
        m = Rat(static_cast<long>(1 + r.next_below(5)));
        total += m;
    }
    for (auto& m : mu) m /= total;
    return mu;
}

// Random symmetric kernel; with ensure_pos_degree, every type gets a positive
// diagonal entry if its row would otherwise vanish.
StepKernel random_symmetric(Rng& r, int n, bool ensure_pos_degree) {
    RatMatrix w(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            if (r.next_unit() >= 0.4) w[i][j] = w[j][i] = rand_positive_rat(r);
    if (ensure_pos_degree)
        for (int i = 0; i < n; ++i) {
            bool zero = true;
            for (int j = 0; j < n; ++j)
                if (w[i][j] > 0) zero = false;
            if (zero) w[i][i] = rand_positive_rat(r);
        }
    return StepKernel(rand_masses(r, n), std::move(w));
}

// Random asymmetric-allowed kernel for structural checks.
StepAkernel random_akernel(Rng& r, int n) {
    RatMatrix w(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (r.next_unit() >= 0.4) w[i][j] = rand_positive_rat(r);
    return StepAkernel(rand_masses(r, n), std::move(w));
}

// Split type i into two types carrying fractions a and 1-a of its mass; rows
// and columns are duplicated, so the result is fractionally isomorphic to K.
StepKernel split_type(const StepKernel& K, int i, const Rat& a) {
    int n = K.n();
    std::vector<Rat> mu;
    RatMatrix w(n + 1, std::vector<Rat>(n + 1));
    auto src = [&](int x) { return x <= i ? x : x - 1; };  // new index -> old
    for (int x = 0; x <= n; ++x) {
        mu.push_back(x == i ? K.mu[i] * a : x == i + 1 ? K.mu[i] * (1 - a) : K.mu[src(x)]);
        for (int y = 0; y <= n; ++y) w[x][y] = K.w[src(x)][src(y)];
    }
    return StepKernel(std::move(mu), std::move(w));
}

StepKernel permute(const StepKernel& K, const std::vector<int>& perm) {
    int n = K.n();
    std::vector<Rat> mu(n);
    RatMatrix w(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i) {
        mu[perm[i]] = K.mu[i];
        for (int j = 0; j < n; ++j) w[perm[i]][perm[j]] = K.w[i][j];
    }
    return StepKernel(std::move(mu), std::move(w));
}

std::vector<int> random_perm(Rng& r, int n) {
    std::vector<int> p(n);
    std::iota(p.begin(), p.end(), 0);
    for (int i = n - 1; i > 0; --i)
        std::swap(p[i], p[static_cast<int>(r.next_below(i + 1))]);
    return p;
}

// Multiply every entry inside each connected component by its own random
// positive factor (a piecewise-projective transformation).
StepKernel scale_components(const StepKernel& K, Rng& r) {
    ComponentDecomposition cd = components(K);
    RatMatrix w = K.w;
    for (const auto& comp : cd.components) {
        Rat t = rand_positive_rat(r);
        for (int i : comp)
            for (int j : comp) w[i][j] = K.w[i][j] * t;
    }
    return StepKernel(K.mu, std::move(w));
}

// Fractional-isomorphism-preserving transformation: a couple of type splits
// followed by a permutation.
StepKernel split_and_permute(const StepKernel& K, Rng& r) {
    StepKernel out = K;
    int splits = 1 + static_cast<int>(r.next_below(2));
    for (int s = 0; s < splits && out.n() < 8; ++s) {
        int i = static_cast<int>(r.next_below(out.n()));
        Rat a = Rat(static_cast<long>(1 + r.next_below(3))) / Rat(4);  // in {1/4,1/2,3/4}
        out = split_type(out, i, a);
    }
    return permute(out, random_perm(r, out.n()));
}

// Random disconnected symmetric kernel: two or three blocks on <= 6 types.
StepKernel random_disconnected(Rng& r) {
    int blocks = 2 + static_cast<int>(r.next_below(2));
    std::vector<StepKernel> parts;
    int total = 0;
    for (int b = 0; b < blocks; ++b) {
        int nb = 1 + static_cast<int>(r.next_below(2));
        if (total + nb > 6) nb = 1;
        total += nb;
        parts.push_back(random_symmetric(r, nb, false));
    }
    std::vector<Rat> mu;
    RatMatrix w(total, std::vector<Rat>(total, Rat(0)));
    std::vector<Rat> weights = rand_masses(r, blocks);
    int off = 0;
    for (int b = 0; b < blocks; ++b) {
        int nb = parts[b].n();
        for (int i = 0; i < nb; ++i) {
            mu.push_back(parts[b].mu[i] * weights[b]);
            for (int j = 0; j < nb; ++j) w[off + i][off + j] = parts[b].w[i][j];
        }
        off += nb;
    }
    return StepKernel(std::move(mu), std::move(w));
}

// ---- graph helpers ----------------------------------------------------------

Graph random_graph(Rng& r, int n, double p) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (r.next_unit() < p) e.emplace_back(i, j);
    return graph_from_edges(n, e);
}

Graph permute_graph(const Graph& G, Rng& r) {
    auto p = random_perm(r, G.n);
    std::vector<std::pair<int, int>> e;
    for (auto [u, v] : G.edges) e.emplace_back(p[u], p[v]);
    return graph_from_edges(G.n, e);
}

// Disjoint union of cycles with the given lengths (all >= 3): 2-regular.
Graph cycle_union(const std::vector<int>& lengths) {
    std::vector<std::pair<int, int>> e;
    int off = 0;
    for (int len : lengths) {
        for (int i = 0; i < len; ++i) e.emplace_back(off + i, off + (i + 1) % len);
        off += len;
    }
    return graph_from_edges(off, e);
}

// ---- numeric helpers ---------------------------------------------------------

double bisect_survival(double d) {
    double lo = 1e-12, hi = 1.0;
    if (-std::expm1(-d * lo) <= lo) return 0.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (-std::expm1(-d * mid) > mid)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

std::string star_code(int d) {
    std::string s = "(";
    for (int i = 0; i < d; ++i) s += "()";
    return s + ")";
}

// All empirical frequencies of classes with exact probability > 0.001 must sit
// within 4*sqrt(p(1-p)/N) of the exact value.
bool mc_bands_ok(const BallDistribution& exact, const BallDistribution& mc, long long N,
                 double& worst_z) {
    bool ok = true;
    for (const auto& [code, p] : exact.entries) {
        if (p <= 0.001) continue;
        auto it = mc.entries.find(code);
        double freq = it == mc.entries.end() ? 0.0 : it->second;
        double band = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(N));
        double z = std::abs(freq - p) / (band / 4.0);
        worst_z = std::max(worst_z, z);
        if (std::abs(freq - p) > band) ok = false;
    }
    return ok;
}

int run_quiet(const std::vector<std::string>& args, std::string* results_dump = nullptr) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    if (results_dump) {
        auto j = nlohmann::json::parse(out.str());
        *results_dump = j["results"].dump();
    }
    return code;
}

struct Criterion {
    std::string name;
    double budget_s;  // 0 = no runtime requirement
    std::function<bool(std::string&)> run;
};

}  // namespace

int main() {
    std::vector<Criterion> criteria;

    criteria.push_back({"survival probabilities match the bisection oracle", 1.0, [](std::string& note) {
        bool ok = true;
        for (double d : {1.2, 2.0, 3.0}) {
            const char* frac = d == 1.2 ? "6/5" : d == 2.0 ? "2" : "3";
            SurvivalResult r = survival(StepKernel({q("1")}, {{q(frac)}}));
            double ref = bisect_survival(d);
            if (!r.converged || std::abs(r.gamma - ref) > 1e-9) ok = false;
        }
        for (const char* frac : {"1/2", "1"}) {
            SurvivalResult r = survival(StepKernel({q("1")}, {{q(frac)}}));
            if (r.gamma > 1e-9) ok = false;
        }
        note = "d in {1/2, 1, 6/5, 2, 3}, tolerance 1e-9";
        return ok;
    }});

    criteria.push_back({"fractionally isomorphic kernels give equal ball probabilities", 30.0,
                        [](std::string& note) {
        auto trees = enumerate_trees(3, 8);
        double worst = 0.0;
        auto check_pair = [&](const StepAkernel& U, const StepAkernel& W) {
            for (const auto& T : trees) {
                double d = std::abs(x_tree_prob(U, T, 3) - x_tree_prob(W, T, 3));
                worst = std::max(worst, d);
            }
        };
        StepKernel reg2({q("1")}, {{q("2")}});
        StepKernel bip({q("1/2"), q("1/2")}, {{q("0"), q("4")}, {q("4"), q("0")}});
        if (!frac_iso(reg2, bip).iso) return false;
        check_pair(reg2, bip);
        Rng r(20260818, 2);
        for (int p = 0; p < 20; ++p) {
            StepKernel base = random_symmetric(r, 1 + static_cast<int>(r.next_below(3)), false);
            StepKernel other = split_and_permute(base, r);
            if (!frac_iso(base, other).iso) return false;
            check_pair(base, other);
        }
        std::ostringstream s;
        s << "21 pairs, 113 trees, max deviation " << worst;
        note = s.str();
        return worst <= 1e-9;
    }});

    criteria.push_back({"separating ball found for the non-isomorphic example pair", 1.0,
                        [](std::string& note) {
        auto sep = separating_tree_search(two_type(), uniform_one(), 4, 8);
        if (!sep) return false;
        double pu_ref = (std::exp(-1.5) + std::exp(-0.5)) / 2;
        double pw_ref = std::exp(-1.0);
        std::ostringstream s;
        s << "tree " << sep->tree.code() << " at depth " << sep->k;
        note = s.str();
        return sep->tree.code() == "()" && sep->k == 1 && std::abs(sep->pu - pu_ref) <= 1e-9 &&
               std::abs(sep->pw - pw_ref) <= 1e-9;
    }});

    criteria.push_back({"simulated ball frequencies match the exact recursions", 60.0,
                        [](std::string& note) {
        const long long N = 100000;
        double worst_z = 0.0;
        bool ok = true;
        int kernel_idx = 0;
        for (const StepKernel& K : {uniform_one(), two_type(), block_13_7()}) {
            SimConfig cfg;
            cfg.samples = N;
            cfg.depth = 2;
            cfg.threads = 4;
            cfg.seed = 2026 + kernel_idx;
            SimReport x = simulate_x(K, cfg);
            ok = mc_bands_ok(x_ball_distribution(K, 2, 10), x.distribution, N, worst_z) && ok;
            cfg.seed = 3026 + kernel_idx;
            SimReport u = simulate_u(K, cfg);
            ok = mc_bands_ok(u_ball_distribution(K, 2, 10), u.distribution, N, worst_z) && ok;
            ++kernel_idx;
        }
        std::ostringstream s;
        s << "3 kernels x 2 processes at N=1e5, worst deviation " << worst_z << " sigma (cap 4)";
        note = s.str();
        return ok;
    }});

    criteria.push_back({"renormalized process keeps unit mean generation sizes", 0.0,
                        [](std::string& note) {
        bool ok = true;
        double worst_dev = 0.0;
        StepKernel k2({q("1/2"), q("1/2")}, {{q("2"), q("1")}, {q("1"), q("1")}});
        for (const StepKernel& K : {uniform_one(), k2}) {
            SimConfig cfg;
            cfg.samples = 100000;
            cfg.depth = 1;
            cfg.horizon = 10;
            cfg.threads = 4;
            cfg.seed = 555;
            SimReport rep = simulate_xdagger(K, cfg);
            for (double m : rep.mean_generation_size) {
                worst_dev = std::max(worst_dev, std::abs(m - 1.0));
                if (m < 0.98 || m > 1.02) ok = false;
            }
        }
        std::ostringstream s;
        s << "generations 1..10 at N=1e5, worst |mean - 1| = " << worst_dev << " (cap 0.02)";
        note = s.str();
        return ok;
    }});

    criteria.push_back({"renormalized process dies out, extinction curve monotone", 0.0,
                        [](std::string& note) {
        bool ok = true;
        double final_mass = 1.0;
        StepKernel k2({q("1/2"), q("1/2")}, {{q("2"), q("1")}, {q("1"), q("1")}});
        for (const StepKernel& K : {uniform_one(), k2}) {
            SimConfig cfg;
            cfg.samples = 10000;
            cfg.depth = 1;
            cfg.horizon = 200;
            cfg.threads = 4;
            cfg.seed = 777;
            SimReport rep = simulate_xdagger(K, cfg);
            for (std::size_t g = 1; g < rep.extinct_by.size(); ++g)
                if (rep.extinct_by[g] < rep.extinct_by[g - 1]) ok = false;
            final_mass = std::min(final_mass, rep.extinct_by.back());
            if (rep.extinct_by.back() < 0.95) ok = false;
        }
        std::ostringstream s;
        s << "extinct by generation 200: " << final_mass << " (needs >= 0.95)";
        note = s.str();
        return ok;
    }});

    criteria.push_back({"piecewise decision equals renormalized fractional isomorphism", 30.0,
                        [](std::string& note) {
        Rng r(20260818, 7);
        int mismatches = 0, positives = 0, negatives = 0;
        auto agree = [&](const StepKernel& U, const StepKernel& W, bool expect) {
            bool pw = piecewise_proj_frac_iso(U, W).iso;
            bool dg = frac_iso(markov_renormalize(U), markov_renormalize(W)).iso;
            if (pw != dg) ++mismatches;
            if (pw == expect) (expect ? ++positives : ++negatives);
            return pw == expect;
        };
        for (int p = 0; p < 50; ++p) {
            StepKernel U = random_symmetric(r, 2 + static_cast<int>(r.next_below(3)), true);
            StepKernel W = split_and_permute(scale_components(U, r), r);
            agree(U, W, true);
        }
        int made = 0;
        while (made < 50) {
            StepKernel U = random_symmetric(r, 2 + static_cast<int>(r.next_below(3)), true);
            StepKernel W = split_and_permute(scale_components(U, r), r);
            // perturb one positive entry pair until the relation breaks
            RatMatrix w = W.w;
            bool broke = false;
            for (int tries = 0; tries < 20 && !broke; ++tries) {
                int a = static_cast<int>(r.next_below(W.n()));
                int b = static_cast<int>(r.next_below(W.n()));
                if (w[a][b] == 0) continue;
                RatMatrix w2 = w;
                w2[a][b] = w2[b][a] = w[a][b] * Rat(3) / Rat(2);
                StepKernel W2(W.mu, w2);
                if (W2.min_degree() > 0 && !piecewise_proj_frac_iso(U, W2).iso) {
                    agree(U, W2, false);
                    broke = true;
                }
            }
            if (broke) ++made;
        }
        std::ostringstream s;
        s << positives << " equal pairs, " << negatives << " unequal pairs, " << mismatches
          << " oracle mismatches";
        note = s.str();
        return mismatches == 0 && positives == 50 && negatives == 50;
    }});

    criteria.push_back({"two-block kernel is piecewise-equivalent to the constant kernel", 0.0,
                        [](std::string& note) {
        if (run_quiet({"fi", DATA + "/block_13_7.json", DATA + "/uniform_one.json", "--mode",
                       "piecewise"}) != 0)
            return false;
        // the non-root run on the block kernel has exactly the constant
        // kernel's ball law
        StepKernel B = block_13_7(), One = uniform_one();
        double worst = 0.0;
        for (int rr = 1; rr <= 2; ++rr)
            for (const auto& T : enumerate_trees(2, 6))
                if (T.height() <= rr)
                    worst = std::max(worst,
                                     std::abs(u_tree_prob(B, T, rr) - u_tree_prob(One, T, rr)));
        if (worst > 1e-12) {
            note = "exact ball laws differ";
            return false;
        }
        SimConfig cfg;
        cfg.samples = 100000;
        cfg.depth = 2;
        cfg.threads = 4;
        cfg.seed = 6180;
        SimReport mc = simulate_u(B, cfg);
        double tv = tv_distance(mc.distribution, u_ball_distribution(One, 2, 20));
        std::ostringstream s;
        s << "exact deviation " << worst << ", Monte Carlo tv " << tv << " (cap 0.02)";
        note = s.str();
        return tv <= 0.02;
    }});

    criteria.push_back({"component-factor route agrees with the direct deciders", 0.0,
                        [](std::string& note) {
        Rng r(20260818, 9);
        int mismatches = 0;
        for (int p = 0; p < 200; ++p) {
            StepKernel U = random_disconnected(r);
            StepKernel W = p % 2 == 0 ? split_and_permute(U, r) : random_disconnected(r);
            if (kernel_factor_check(U, W).iso != frac_iso(U, W).iso) ++mismatches;
        }
        std::vector<std::vector<int>> partitions = {{12}, {3, 9}, {4, 8}, {5, 7}, {6, 6},
                                                    {3, 3, 6}, {3, 4, 5}, {4, 4, 4}, {3, 3, 3, 3}};
        for (int p = 0; p < 200; ++p) {
            Graph G, H;
            if (p % 4 == 0) {
                G = cycle_union(partitions[r.next_below(partitions.size())]);
                H = cycle_union(partitions[r.next_below(partitions.size())]);
            } else if (p % 4 == 1) {
                G = random_graph(r, 4 + static_cast<int>(r.next_below(9)), 0.3);
                H = permute_graph(G, r);
            } else {
                G = random_graph(r, 4 + static_cast<int>(r.next_below(9)), 0.3);
                H = random_graph(r, 4 + static_cast<int>(r.next_below(9)), 0.3);
            }
            if (graph_factor_check(G, H).iso != practional_iso(G, H)) ++mismatches;
        }
        // the classic positive instances, both routes
        Graph c10 = cycle_union({10}), c6c4 = cycle_union({6, 4});
        Graph k4 = graph_from_edges(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
        Graph k33 = graph_from_edges(
            6, {{0, 3}, {0, 4}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {2, 3}, {2, 4}, {2, 5}});
        bool classics = practional_iso(c6c4, c10) && graph_factor_check(c6c4, c10).iso &&
                        practional_iso(k4, k33) && graph_factor_check(k4, k33).iso;
        std::ostringstream s;
        s << "200 kernel pairs + 200 graph pairs, " << mismatches << " mismatches";
        note = s.str();
        return mismatches == 0 && classics;
    }});

    criteria.push_back({"spanning-tree ball statistics approach the non-root run law", 600.0,
                        [](std::string& note) {
        StepKernel One = uniform_one();
        UstConfig cfg;
        cfg.seed = 31;
        cfg.graphs = 2000;
        cfg.threads = 4;
        UstReport deg = ust_ball_distribution(One, 300, 1, cfg);
        BallDistribution ref1;
        ref1.depth = 1;
        double covered = 0.0, fact = 1.0;
        for (int d = 1; d <= 15; ++d) {
            ref1.entries[star_code(d)] = std::exp(-1.0) / fact;
            covered += std::exp(-1.0) / fact;
            fact *= d;
        }
        ref1.residual = 1.0 - covered;
        double tv1 = tv_distance(deg.distribution, ref1);

        cfg.seed = 32;
        UstReport ball2 = ust_ball_distribution(One, 300, 2, cfg);
        double tv2 = tv_distance(ball2.distribution, u_ball_distribution(One, 2, 20));
        std::ostringstream s;
        s << "root-degree tv " << tv1 << " (cap 0.05), depth-2 tv " << tv2 << " (cap 0.08)";
        note = s.str();
        return tv1 <= 0.05 && tv2 <= 0.08;
    }});

    criteria.push_back({"branching constant: regular kernels, scaling, invariance", 0.0,
                        [](std::string& note) {
        bool ok = true;
        // exactly 1 on constant-degree kernels
        for (const StepKernel& K :
             {uniform_one(), StepKernel({q("1")}, {{q("3")}}),
              StepKernel({q("1/2"), q("1/2")}, {{q("0"), q("4")}, {q("4"), q("0")}}),
              heart(block_13_7())})
            if (std::abs(cw_constant(K) - 1.0) > 1e-12) ok = false;
        // scale invariance
        for (const char* t : {"1/3", "2", "7"})
            if (std::abs(cw_constant(scale(two_type(), q(t))) - cw_constant(two_type())) > 1e-12)
                ok = false;
        // invariance across projectively equivalent pairs
        Rng r(20260818, 11);
        double worst = 0.0;
        for (int p = 0; p < 20; ++p) {
            StepKernel U = random_symmetric(r, 2 + static_cast<int>(r.next_below(3)), true);
            StepKernel W = scale(split_and_permute(U, r), rand_positive_rat(r));
            if (!proj_frac_iso(U, W).iso) return false;
            worst = std::max(worst, std::abs(cw_constant(U) - cw_constant(W)));
        }
        std::ostringstream s;
        s << "20 pairs, worst constant deviation " << worst;
        note = s.str();
        return ok && worst <= 1e-12;
    }});

    criteria.push_back({"structural properties and bytewise determinism", 0.0,
                        [](std::string& note) {
        Rng r(20260818, 13);
        // refinement stabilizes in < n rounds, monotonically
        for (int t = 0; t < 1000; ++t) {
            int n = 1 + static_cast<int>(r.next_below(6));
            StepAkernel A = random_akernel(r, n);
            auto trace = refine_trace(A.mu, A.w);
            RefineResult res = refine(A);
            if (res.partition.rounds > n - 1) return false;
            for (std::size_t s = 1; s < trace.size(); ++s)
                if (!partition_refines(trace[s], trace[s - 1])) return false;
        }
        // the stable partition of W refines the stable partition of the
        // column renormalization
        for (int t = 0; t < 200; ++t) {
            StepKernel K = random_symmetric(r, 1 + static_cast<int>(r.next_below(6)), false);
            if (!partition_refines(refine(K).partition.color,
                                   refine(markov_renormalize(K)).partition.color))
                return false;
        }
        // renormalized equivalence transfers to the degree-one rescaling
        for (int t = 0; t < 50; ++t) {
            StepKernel U = random_symmetric(r, 2 + static_cast<int>(r.next_below(3)), true);
            StepKernel W = split_and_permute(scale_components(U, r), r);
            if (!frac_iso(markov_renormalize(U), markov_renormalize(W)).iso) return false;
            if (!frac_iso(heart(U), heart(W)).iso) return false;
        }
        // identical seeds, different thread counts: byte-identical payloads
        std::string sim1, sim4, ust1, ust3;
        run_quiet({"simulate", DATA + "/two_type.json", "--samples", "20000", "--depth", "2",
                   "--seed", "77", "--threads", "1"},
                  &sim1);
        run_quiet({"simulate", DATA + "/two_type.json", "--samples", "20000", "--depth", "2",
                   "--seed", "77", "--threads", "4"},
                  &sim4);
        run_quiet({"ust", DATA + "/uniform_one.json", "--n", "25", "--radius", "1", "--graphs",
                   "100", "--seed", "5", "--threads", "1"},
                  &ust1);
        run_quiet({"ust", DATA + "/uniform_one.json", "--n", "25", "--radius", "1", "--graphs",
                   "100", "--seed", "5", "--threads", "3"},
                  &ust3);
        if (sim1 != sim4 || ust1 != ust3) {
            note = "thread count changed a report payload";
            return false;
        }
        note = "1000 refinements, 200 renormalized partitions, 50 transfer pairs, byte-equal "
               "reports";
        return true;
    }});

    bool all_ok = true;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        std::string note;
        bool ok = false;
        try {
            ok = criteria[i].run(note);
        } catch (const std::exception& e) {
            ok = false;
            note = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (criteria[i].budget_s > 0 && secs > criteria[i].budget_s) {
            ok = false;
            note += " [over time budget]";
        }
        std::printf("[%s] %2zu. %s%s%s (%.2f s)\n", ok ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), note.empty() ? "" : " -- ", note.c_str(), secs);
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
    std::printf("%s\n", all_ok ? "acceptance: all 12 criteria passed"
                               : "acceptance: FAILURES present");
    return all_ok ? 0 : 1;
}
