#include "stepkernel/exact_probs.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace stepkernel {

namespace {

std::vector<std::vector<double>> offspring_means(const StepAkernel& A) {
    const int n = A.n();
    std::vector<std::vector<double>> M(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = rat_to_double(A.w[i][j] * A.mu[j]);
    return M;
}

double factorial(int l) {
    double f = 1.0;
    for (int i = 2; i <= l; ++i) f *= i;
    return f;
}

// Memoized truncation-law recursion for the Poisson branching process with
// offspring means M[i][j]; deg[i] = sum_j M[i][j].
class XEvaluator {
  public:
    explicit XEvaluator(std::vector<std::vector<double>> M) : M_(std::move(M)), deg_(M_.size(), 0.0) {
        for (std::size_t i = 0; i < M_.size(); ++i)
            for (double m : M_[i]) deg_[i] += m;
    }

    double at(int i, const RootedTree& T, int k) {
        if (k == 0) return T.vertices() == 1 ? 1.0 : 0.0;
        std::string key = std::to_string(k) + '|' + std::to_string(i) + '|' + T.code();
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        double p = std::exp(-deg_[i]);
        for (const auto& m : multiplicity_profile(T)) {
            double s = 0.0;
            for (std::size_t j = 0; j < M_.size(); ++j) s += M_[i][j] * at(static_cast<int>(j), m.tree, k - 1);
            p *= std::pow(s, m.count) / factorial(m.count);
        }
        memo_.emplace(std::move(key), p);
        return p;
    }

    double root_average(const std::vector<double>& mu, const RootedTree& T, int k) {
        double p = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) p += mu[i] * at(static_cast<int>(i), T, k);
        return p;
    }

    const std::vector<double>& deg() const { return deg_; }

  private:
    std::vector<std::vector<double>> M_;
    std::vector<double> deg_;
    std::unordered_map<std::string, double> memo_;
};

std::vector<double> mu_doubles(const StepAkernel& A) {
    std::vector<double> mu(A.n());
    for (int i = 0; i < A.n(); ++i) mu[i] = rat_to_double(A.mu[i]);
    return mu;
}

void require_height(const RootedTree& T, int k) {
    if (T.height() > k)
        throw std::invalid_argument("tree of height " + std::to_string(T.height()) +
                                    " cannot appear at truncation depth " + std::to_string(k));
}

// Truncation law of the subtree below an ancestor particle: one ancestor
// child (type law A[i][j], rows summing to 1) plus the ordinary Poisson brood
// with the Markov-renormalized means Mdag. Sums over which child class of T
// hosts the ancestor child.
class UEvaluator {
  public:
    explicit UEvaluator(const StepKernel& K)
        : Mdag_(offspring_means(markov_renormalize(K))), oth_(Mdag_), A_(K.n(), std::vector<double>(K.n())) {
        for (int i = 0; i < K.n(); ++i) {
            double deg = rat_to_double(K.degree(i));
            for (int j = 0; j < K.n(); ++j) A_[i][j] = rat_to_double(K.w[i][j] * K.mu[j]) / deg;
        }
    }

    double anc(int i, const RootedTree& T, int k) {
        if (k == 0) return T.vertices() == 1 ? 1.0 : 0.0;
        if (T.vertices() == 1) return 0.0;  // the ancestor child is always there
        std::string key = std::to_string(k) + '|' + std::to_string(i) + '|' + T.code();
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        const auto profile = multiplicity_profile(T);
        const int n = static_cast<int>(A_.size());
        double total = 0.0;
        for (std::size_t s = 0; s < profile.size(); ++s) {
            double host = 0.0;
            for (int j = 0; j < n; ++j) host += A_[i][j] * anc(j, profile[s].tree, k - 1);
            if (host == 0.0) continue;
            // ordinary children must realize the profile minus one copy of s
            double poi = std::exp(-oth_.deg()[i]);
            for (std::size_t t = 0; t < profile.size(); ++t) {
                int l = profile[t].count - (t == s ? 1 : 0);
                if (l == 0) continue;
                double lambda = 0.0;
                for (int j = 0; j < n; ++j) lambda += Mdag_[i][j] * oth_.at(j, profile[t].tree, k - 1);
                poi *= std::pow(lambda, l) / factorial(l);
            }
            total += host * poi;
        }
        memo_.emplace(std::move(key), total);
        return total;
    }

    double root_average(const std::vector<double>& mu, const RootedTree& T, int r) {
        double p = 0.0;
        for (std::size_t i = 0; i < mu.size(); ++i) p += mu[i] * anc(static_cast<int>(i), T, r);
        return p;
    }

  private:
    std::vector<std::vector<double>> Mdag_;
    XEvaluator oth_;
    std::vector<std::vector<double>> A_;
    std::unordered_map<std::string, double> memo_;
};

}  // namespace

double x_tree_prob_at(const StepAkernel& A, int i, const RootedTree& T, int k) {
    if (i < 0 || i >= A.n()) throw std::invalid_argument("type index out of range");
    if (k < 0) throw std::invalid_argument("negative truncation depth");
    require_height(T, k);
    XEvaluator ev(offspring_means(A));
    return ev.at(i, T, k);
}

double x_tree_prob(const StepAkernel& A, const RootedTree& T, int k) {
    if (k < 0) throw std::invalid_argument("negative truncation depth");
    require_height(T, k);
    XEvaluator ev(offspring_means(A));
    return ev.root_average(mu_doubles(A), T, k);
}

double u_tree_prob(const StepKernel& K, const RootedTree& T, int r) {
    if (K.min_degree() <= 0)
        throw std::invalid_argument("non-root run needs positive minimum degree");
    if (r < 0) throw std::invalid_argument("negative truncation depth");
    require_height(T, r);
    UEvaluator ev(K);
    return ev.root_average(mu_doubles(K), T, r);
}

BallDistribution x_ball_distribution(const StepAkernel& A, int k, int max_vertices) {
    BallDistribution out;
    out.depth = k;
    XEvaluator ev(offspring_means(A));
    std::vector<double> mu = mu_doubles(A);
    double covered = 0.0;
    for (const auto& T : enumerate_trees(k, max_vertices)) {
        double p = ev.root_average(mu, T, k);
        covered += p;
        if (p > 0.0) out.entries[T.code()] = p;
    }
    out.residual = std::max(0.0, 1.0 - covered);
    return out;
}

BallDistribution u_ball_distribution(const StepKernel& K, int r, int max_vertices) {
    if (K.min_degree() <= 0)
        throw std::invalid_argument("non-root run needs positive minimum degree");
    BallDistribution out;
    out.depth = r;
    UEvaluator ev(K);
    std::vector<double> mu = mu_doubles(K);
    double covered = 0.0;
    for (const auto& T : enumerate_trees(r, max_vertices)) {
        double p = ev.root_average(mu, T, r);
        covered += p;
        if (p > 0.0) out.entries[T.code()] = p;
    }
    out.residual = std::max(0.0, 1.0 - covered);
    return out;
}

SurvivalResult survival(const StepAkernel& K, double tol, long long max_iter) {
    if (tol <= 0) throw std::invalid_argument("tolerance must be positive");
    const int n = K.n();
    auto M = offspring_means(K);
    auto apply_F = [&](const std::vector<double>& s) {
        std::vector<double> out(n);
        for (int i = 0; i < n; ++i) {
            double dot = 0.0;
            for (int j = 0; j < n; ++j) dot += M[i][j] * s[j];
            out[i] = -std::expm1(-dot);  // 1 - exp(-dot), accurate near 0
        }
        return out;
    };
    auto residual_of = [&](const std::vector<double>& s) {
        std::vector<double> fs = apply_F(s);
        double r = 0.0;
        for (int i = 0; i < n; ++i) r = std::max(r, std::abs(s[i] - fs[i]));
        return r;
    };

    SurvivalResult out;
    std::vector<double> s(n, 1.0);
    long long it = 0;

    // Monotone fixed-point phase: from s == 1 the iterates decrease to the
    // maximal fixed point.
    double res = residual_of(s);
    while (res > tol && it < max_iter) {
        s = apply_F(s);
        res = residual_of(s);
        ++it;
        if (it >= max_iter / 2) break;
    }

    // Newton polish on G(s) = s - F(s): at (sub)critical kernels the fixed
    // point is 0 and plain iteration crawls, while Newton still converges.
    // Steps are kept only if they reduce the residual; otherwise fall back to
    // one more fixed-point step.
    for (int step = 0; step < 200 && it < max_iter; ++step, ++it) {
        if (res == 0.0) break;
        std::vector<double> fs = apply_F(s);
        std::vector<std::vector<double>> J(n, std::vector<double>(n));
        std::vector<double> g(n);
        for (int i = 0; i < n; ++i) {
            double dot = 0.0;
            for (int j = 0; j < n; ++j) dot += M[i][j] * s[j];
            double e = std::exp(-dot);
            for (int j = 0; j < n; ++j) J[i][j] = (i == j ? 1.0 : 0.0) - e * M[i][j];
            g[i] = s[i] - fs[i];
        }
        // Gaussian elimination with partial pivoting
        std::vector<double> d = g;
        bool solved = true;
        for (int col = 0; col < n && solved; ++col) {
            int piv = col;
            for (int r2 = col + 1; r2 < n; ++r2)
                if (std::abs(J[r2][col]) > std::abs(J[piv][col])) piv = r2;
            std::swap(J[piv], J[col]);
            std::swap(d[piv], d[col]);
            if (J[col][col] == 0.0) {
                solved = false;
                break;
            }
            for (int r2 = col + 1; r2 < n; ++r2) {
                double f = J[r2][col] / J[col][col];
                for (int c2 = col; c2 < n; ++c2) J[r2][c2] -= f * J[col][c2];
                d[r2] -= f * d[col];
            }
        }
        if (solved)
            for (int i = n - 1; i >= 0; --i) {
                for (int j = i + 1; j < n; ++j) d[i] -= J[i][j] * d[j];
                d[i] /= J[i][i];
            }
        std::vector<double> cand(n);
        double step_size = 0.0;
        bool finite = solved;
        for (int i = 0; i < n && finite; ++i) {
            if (!std::isfinite(d[i])) finite = false;
            cand[i] = std::clamp(s[i] - d[i], 0.0, 1.0);
            step_size = std::max(step_size, std::abs(d[i]));
        }
        double cand_res = finite ? residual_of(cand) : res;
        if (finite && cand_res < res) {
            s = std::move(cand);
            res = cand_res;
        } else {
            s = fs;
            res = residual_of(s);
        }
        if (res == 0.0 || (finite && step_size < 1e-15)) break;
    }

    out.s = s;
    out.residual = res;
    out.iterations = it;
    out.converged = res <= tol;
    out.gamma = 0.0;
    for (int i = 0; i < n; ++i) out.gamma += rat_to_double(K.mu[i]) * s[i];
    return out;
}

std::optional<Separation> separating_tree_search(const StepAkernel& U, const StepAkernel& W,
                                                 int max_height, int max_vertices) {
    XEvaluator eu(offspring_means(U)), ew(offspring_means(W));
    std::vector<double> mu_u = mu_doubles(U), mu_w = mu_doubles(W);
    std::vector<RootedTree> trees = enumerate_trees(max_height, max_vertices);
    for (int k = 1; k <= max_height; ++k)
        for (const auto& T : trees) {
            if (T.height() > k) continue;
            double pu = eu.root_average(mu_u, T, k);
            double pw = ew.root_average(mu_w, T, k);
            if (std::abs(pu - pw) > 1e-9) return Separation{T, k, pu, pw};
        }
    return std::nullopt;
}

}  // namespace stepkernel
