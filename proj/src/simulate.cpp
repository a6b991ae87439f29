#include "stepkernel/simulate.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <thread>

namespace stepkernel {

namespace {

struct ProcessSpec {
    std::vector<std::vector<double>> M;        // Poisson offspring means for ordinary particles
    std::vector<double> mu_cdf;                // root type law
    bool has_anc = false;
    std::vector<std::vector<double>> anc_cdf;  // per type: cumulative ancestor-child law
};

std::vector<std::vector<double>> double_means(const StepAkernel& A) {
    const int n = A.n();
    std::vector<std::vector<double>> M(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = rat_to_double(A.w[i][j] * A.mu[j]);
    return M;
}

std::vector<double> cdf_of(const std::vector<double>& weights) {
    std::vector<double> cdf(weights.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) cdf[i] = (acc += weights[i]);
    if (!cdf.empty()) cdf.back() = std::max(cdf.back(), 1.0);  // guard rounding at the top
    return cdf;
}

int draw_cdf(const std::vector<double>& cdf, Rng& rng) {
    const double u = rng.next_unit();
    return static_cast<int>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
}

ProcessSpec x_spec(const StepAkernel& A) {
    ProcessSpec s;
    s.M = double_means(A);
    std::vector<double> mu(A.n());
    for (int i = 0; i < A.n(); ++i) mu[i] = rat_to_double(A.mu[i]);
    s.mu_cdf = cdf_of(mu);
    return s;
}

ProcessSpec u_spec(const StepKernel& K) {
    if (K.min_degree() <= 0)
        throw std::invalid_argument("non-root run needs positive minimum degree");
    ProcessSpec s = x_spec(markov_renormalize(K));
    s.has_anc = true;
    auto M = double_means(K);
    for (int i = 0; i < K.n(); ++i) {
        double deg = 0.0;
        for (double m : M[i]) deg += m;
        std::vector<double> row = M[i];
        for (double& x : row) x /= deg;
        s.anc_cdf.push_back(cdf_of(row));
    }
    return s;
}

// One sample: structural build down to `depth`, then count-only evolution of
// the frontier up to `horizon` for the generation statistics.
struct SampleOut {
    RootedTree tree = RootedTree::leaf();
    bool truncated = false;
    std::vector<long long> gen_sizes;  // 0..horizon (valid prefix if truncated)
};

class Sampler {
  public:
    Sampler(const ProcessSpec& spec, int depth, int horizon, long long max_nodes, bool root_anc)
        : spec_(spec), depth_(depth), horizon_(std::max(horizon, depth)), max_nodes_(max_nodes),
          root_anc_(root_anc) {}

    SampleOut draw(Rng& rng) {
        out_ = SampleOut{};
        out_.gen_sizes.assign(horizon_ + 1, 0);
        nodes_ = 0;
        frontier_.assign(spec_.M.size(), 0);
        anc_frontier_ = -1;
        int root_type = draw_cdf(spec_.mu_cdf, rng);
        RootedTree t = grow(root_type, 0, root_anc_ && spec_.has_anc, rng);
        if (!out_.truncated) {
            out_.tree = std::move(t);
            evolve_counts(rng);
        }
        return std::move(out_);
    }

  private:
    RootedTree grow(int type, int level, bool is_anc, Rng& rng) {
        ++out_.gen_sizes[level];
        if (++nodes_ > max_nodes_) out_.truncated = true;
        if (out_.truncated) return RootedTree::leaf();
        if (level == depth_) {
            // frontier bookkeeping for the count-only continuation
            if (is_anc)
                anc_frontier_ = type;
            else
                ++frontier_[type];
            return RootedTree::leaf();
        }
        std::vector<RootedTree> children;
        if (is_anc) children.push_back(grow(draw_cdf(spec_.anc_cdf[type], rng), level + 1, true, rng));
        const int n = static_cast<int>(spec_.M.size());
        for (int j = 0; j < n; ++j) {
            int c = rng.poisson(spec_.M[type][j]);
            for (int r = 0; r < c && !out_.truncated; ++r) children.push_back(grow(j, level + 1, false, rng));
        }
        if (out_.truncated) return RootedTree::leaf();
        return RootedTree::from_children(std::move(children));
    }

    void evolve_counts(Rng& rng) {
        const int n = static_cast<int>(spec_.M.size());
        std::vector<long long> counts = frontier_;
        int anc = anc_frontier_;
        for (int g = depth_ + 1; g <= horizon_ && !out_.truncated; ++g) {
            std::vector<long long> next(n, 0);
            for (int j = 0; j < n; ++j) {
                double lambda = 0.0;
                for (int i = 0; i < n; ++i)
                    if (counts[i] > 0) lambda += static_cast<double>(counts[i]) * spec_.M[i][j];
                if (anc >= 0) lambda += spec_.M[anc][j];  // ordinary children of the ancestor
                next[j] = lambda > 0.0 ? rng.poisson(lambda) : 0;
            }
            if (anc >= 0) anc = draw_cdf(spec_.anc_cdf[anc], rng);
            long long total = (anc >= 0 ? 1 : 0);
            for (long long c : next) total += c;
            nodes_ += total;
            if (nodes_ > max_nodes_) {
                out_.truncated = true;
                break;
            }
            out_.gen_sizes[g] = total;
            counts = std::move(next);
        }
    }

    const ProcessSpec& spec_;
    int depth_, horizon_;
    long long max_nodes_;
    bool root_anc_;
    SampleOut out_;
    long long nodes_ = 0;
    std::vector<long long> frontier_;
    int anc_frontier_ = -1;
};

SimReport drive(const ProcessSpec& spec, const SimConfig& cfg, bool root_anc) {
    if (cfg.samples < 1) throw std::invalid_argument("need at least one sample");
    if (cfg.depth < 0) throw std::invalid_argument("negative depth");
    const int horizon = cfg.horizon > 0 ? cfg.horizon : cfg.depth;
    const int H = std::max(horizon, cfg.depth);
    const int threads = std::max(1, cfg.threads);

    struct Local {
        std::map<std::string, long long> tally;
        std::vector<long long> extinct, gen_sum;
        long long truncated = 0;
    };
    std::vector<Local> locals(threads);
    auto worker = [&](int t) {
        Local& L = locals[t];
        L.extinct.assign(H + 1, 0);
        L.gen_sum.assign(H + 1, 0);
        Sampler sampler(spec, cfg.depth, H, cfg.max_nodes, root_anc);
        for (long long idx = t; idx < cfg.samples; idx += threads) {
            Rng rng(cfg.seed, static_cast<std::uint64_t>(idx));
            SampleOut s = sampler.draw(rng);
            if (s.truncated) {
                ++L.truncated;
                continue;
            }
            ++L.tally[s.tree.code()];
            for (int g = 1; g <= H; ++g) {
                L.gen_sum[g] += s.gen_sizes[g];
                if (s.gen_sizes[g] == 0) ++L.extinct[g];
            }
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
        for (auto& th : pool) th.join();
    }

    SimReport rep;
    rep.samples = cfg.samples;
    std::map<std::string, long long> tally;
    std::vector<long long> extinct(H + 1, 0), gen_sum(H + 1, 0);
    for (const auto& L : locals) {
        rep.truncated_samples += L.truncated;
        for (const auto& [code, c] : L.tally) tally[code] += c;
        for (int g = 0; g <= H; ++g) {
            extinct[g] += L.extinct[g];
            gen_sum[g] += L.gen_sum[g];
        }
    }
    rep.distribution.depth = cfg.depth;
    for (const auto& [code, c] : tally)
        rep.distribution.entries[code] = static_cast<double>(c) / static_cast<double>(cfg.samples);
    rep.distribution.residual =
        static_cast<double>(rep.truncated_samples) / static_cast<double>(cfg.samples);
    const long long kept = cfg.samples - rep.truncated_samples;
    for (int g = 1; g <= H; ++g) {
        rep.extinct_by.push_back(static_cast<double>(extinct[g]) / static_cast<double>(cfg.samples));
        rep.mean_generation_size.push_back(
            kept > 0 ? static_cast<double>(gen_sum[g]) / static_cast<double>(kept) : 0.0);
    }
    return rep;
}

TreeSample single(const ProcessSpec& spec, int depth, Rng& rng, long long max_nodes, bool root_anc) {
    Sampler sampler(spec, depth, depth, max_nodes, root_anc);
    SampleOut s = sampler.draw(rng);
    return TreeSample{std::move(s.tree), s.truncated, std::move(s.gen_sizes)};
}

}  // namespace

TreeSample sample_x(const StepAkernel& A, int depth, Rng& rng, long long max_nodes) {
    return single(x_spec(A), depth, rng, max_nodes, false);
}

TreeSample sample_u(const StepKernel& K, int depth, Rng& rng, long long max_nodes) {
    return single(u_spec(K), depth, rng, max_nodes, true);
}

TreeSample sample_u_minus(const StepKernel& K, int depth, Rng& rng, long long max_nodes) {
    return single(u_spec(K), depth, rng, max_nodes, false);
}

SimReport simulate_x(const StepAkernel& A, const SimConfig& cfg) {
    return drive(x_spec(A), cfg, false);
}

SimReport simulate_u(const StepKernel& K, const SimConfig& cfg) {
    return drive(u_spec(K), cfg, true);
}

SimReport simulate_xdagger(const StepKernel& K, const SimConfig& cfg) {
    return drive(x_spec(markov_renormalize(K)), cfg, false);
}

}  // namespace stepkernel
