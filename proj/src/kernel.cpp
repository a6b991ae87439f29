#include "stepkernel/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stepkernel {

namespace {

void validate(const StepAkernel& k) {
    const int n = k.n();
    if (n == 0) throw std::invalid_argument("kernel needs at least one type");
    Rat total = 0;
    for (int i = 0; i < n; ++i) {
        if (k.mu[i] <= 0) throw std::invalid_argument("mu[" + std::to_string(i) + "] must be positive");
        total += k.mu[i];
    }
    if (total != 1) throw std::invalid_argument("mu must sum to 1, got " + rat_to_string(total));
    if (static_cast<int>(k.w.size()) != n) throw std::invalid_argument("w must be n x n");
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(k.w[i].size()) != n) throw std::invalid_argument("w must be n x n");
        for (int j = 0; j < n; ++j)
            if (k.w[i][j] < 0)
                throw std::invalid_argument("w[" + std::to_string(i) + "][" + std::to_string(j) + "] is negative");
    }
    if (!k.labels.empty() && static_cast<int>(k.labels.size()) != n)
        throw std::invalid_argument("labels must be empty or one per type");
}

}  // namespace

StepAkernel::StepAkernel(std::vector<Rat> mu_, RatMatrix w_, std::vector<std::string> labels_)
    : mu(std::move(mu_)), w(std::move(w_)), labels(std::move(labels_)) {
    validate(*this);
}

const std::string& StepAkernel::label(int i) const {
    static const std::string empty;
    return labels.empty() ? empty : labels[i];
}

Rat StepAkernel::degree(int i) const {
    Rat d = 0;
    for (int j = 0; j < n(); ++j) d += w[i][j] * mu[j];
    return d;
}

std::vector<Rat> StepAkernel::degrees() const {
    std::vector<Rat> d(n());
    for (int i = 0; i < n(); ++i) d[i] = degree(i);
    return d;
}

Rat StepAkernel::l1_norm() const {
    Rat s = 0;
    for (int i = 0; i < n(); ++i) s += mu[i] * degree(i);
    return s;
}

Rat StepAkernel::min_degree() const {
    Rat m = degree(0);
    for (int i = 1; i < n(); ++i) m = std::min(m, degree(i));
    return m;
}

Rat StepAkernel::max_degree() const {
    Rat m = degree(0);
    for (int i = 1; i < n(); ++i) m = std::max(m, degree(i));
    return m;
}

Rat StepAkernel::max_entry() const {
    Rat m = 0;
    for (const auto& row : w)
        for (const auto& x : row) m = std::max(m, x);
    return m;
}

bool StepAkernel::is_symmetric() const {
    for (int i = 0; i < n(); ++i)
        for (int j = i + 1; j < n(); ++j)
            if (w[i][j] != w[j][i]) return false;
    return true;
}

StepKernel::StepKernel(std::vector<Rat> mu_, RatMatrix w_, std::vector<std::string> labels_)
    : StepAkernel(std::move(mu_), std::move(w_), std::move(labels_)) {
    if (!is_symmetric()) throw std::invalid_argument("kernel is not symmetric");
}

StepKernel::StepKernel(StepAkernel a) : StepAkernel(std::move(a)) {
    if (!is_symmetric()) throw std::invalid_argument("kernel is not symmetric");
}

ComponentDecomposition components(const StepKernel& K) {
    const int n = K.n();
    ComponentDecomposition out;
    out.isolated_mass = 0;
    std::vector<int> comp(n, -1);
    for (int i = 0; i < n; ++i) {
        if (K.degree(i) == 0) {
            out.isolated.push_back(i);
            out.isolated_mass += K.mu[i];
            comp[i] = -2;
        }
    }
    for (int start = 0; start < n; ++start) {
        if (comp[start] != -1) continue;
        std::vector<int> stack{start}, members;
        comp[start] = static_cast<int>(out.components.size());
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            members.push_back(i);
            for (int j = 0; j < n; ++j)
                if (comp[j] == -1 && (K.w[i][j] > 0 || K.w[j][i] > 0)) {
                    comp[j] = comp[start];
                    stack.push_back(j);
                }
        }
        std::sort(members.begin(), members.end());
        Rat mass = 0;
        for (int i : members) mass += K.mu[i];
        out.components.push_back(std::move(members));
        out.masses.push_back(mass);
    }
    return out;
}

static RatMatrix scaled(const RatMatrix& w, const Rat& t) {
    RatMatrix out = w;
    for (auto& row : out)
        for (auto& x : row) x *= t;
    return out;
}

StepAkernel scale(const StepAkernel& K, const Rat& t) {
    if (t <= 0) throw std::invalid_argument("scale factor must be positive");
    return StepAkernel(K.mu, scaled(K.w, t), K.labels);
}

StepKernel scale(const StepKernel& K, const Rat& t) {
    if (t <= 0) throw std::invalid_argument("scale factor must be positive");
    return StepKernel(K.mu, scaled(K.w, t), K.labels);
}

static void check_subset(const StepKernel& K, const std::vector<int>& Y) {
    if (Y.empty()) throw std::invalid_argument("restriction set is empty");
    for (std::size_t a = 0; a < Y.size(); ++a) {
        if (Y[a] < 0 || Y[a] >= K.n()) throw std::invalid_argument("restriction set out of range");
        if (a > 0 && Y[a] <= Y[a - 1]) throw std::invalid_argument("restriction set must be ascending");
    }
}

StepKernel restrict_to(const StepKernel& K, const std::vector<int>& Y) {
    check_subset(K, Y);
    Rat mass = 0;
    for (int i : Y) mass += K.mu[i];
    std::vector<Rat> mu;
    RatMatrix w;
    std::vector<std::string> labels;
    for (int i : Y) {
        mu.push_back(K.mu[i] / mass);
        std::vector<Rat> row;
        for (int j : Y) row.push_back(K.w[i][j]);
        w.push_back(std::move(row));
        if (!K.labels.empty()) labels.push_back(K.labels[i]);
    }
    return StepKernel(std::move(mu), std::move(w), std::move(labels));
}

StepKernel rescale_restrict(const StepKernel& K, const std::vector<int>& Y) {
    Rat mass = 0;
    check_subset(K, Y);
    for (int i : Y) mass += K.mu[i];
    return scale(restrict_to(K, Y), mass);
}

StepAkernel markov_renormalize(const StepKernel& K) {
    const int n = K.n();
    std::vector<Rat> deg = K.degrees();
    RatMatrix w(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (deg[j] != 0) w[i][j] = K.w[i][j] / deg[j];
    // deg[j] == 0 forces w[i][j] == 0 by symmetry, so the 0/0 = 0 convention
    // just keeps those entries zero.
    return StepAkernel(K.mu, std::move(w), K.labels);
}

StepKernel heart(const StepKernel& K) {
    const int n = K.n();
    ComponentDecomposition cd = components(K);
    RatMatrix w(n, std::vector<Rat>(n, Rat(0)));
    for (std::size_t c = 0; c < cd.components.size(); ++c) {
        const auto& comp = cd.components[c];
        Rat integral = 0;
        for (int i : comp)
            for (int j : comp) integral += K.mu[i] * K.mu[j] * K.w[i][j];
        if (integral == 0) throw std::logic_error("component with zero internal integral");
        for (int i : comp)
            for (int j : comp) w[i][j] = K.w[i][j] * cd.masses[c] / integral;
    }
    return StepKernel(K.mu, std::move(w), K.labels);
}

double cw_constant(const StepAkernel& K) {
    Rat norm = K.l1_norm();
    if (norm == 0) throw std::invalid_argument("c_W needs a nonzero kernel");
    Rat second = 0;
    for (int i = 0; i < K.n(); ++i) {
        Rat d = K.degree(i);
        second += K.mu[i] * d * d;
    }
    return std::sqrt(rat_to_double(second / (norm * norm)));
}

}  // namespace stepkernel
