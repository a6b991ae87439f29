#pragma once

#include <cstdint>
#include <vector>

#include "stepkernel/ball.hpp"
#include "stepkernel/kernel.hpp"
#include "stepkernel/rng.hpp"
#include "stepkernel/tree.hpp"

namespace stepkernel {

struct SimConfig {
    std::uint64_t seed = 0;
    long long samples = 0;
    int depth = 0;
    long long max_nodes = 1000000;  // per-sample cap; a sample that hits it is counted, not kept
    int threads = 1;
    int horizon = 0;  // generation-statistics horizon; 0 means `depth`
};

// Empirical counterpart of a ball distribution plus per-generation statistics.
// distribution.residual is the truncated fraction. extinct_by[g-1] is the
// fraction of all samples whose generation g is empty (truncated samples are
// never counted extinct); mean_generation_size[g-1] averages generation g over
// the non-truncated samples.
struct SimReport {
    BallDistribution distribution;
    long long samples = 0;
    long long truncated_samples = 0;
    std::vector<double> extinct_by;
    std::vector<double> mean_generation_size;
};

// Single draws. The tree is truncated below `depth`; gen_sizes[g] counts the
// particles of generation g = 0..depth.
struct TreeSample {
    RootedTree tree;
    bool truncated = false;
    std::vector<long long> gen_sizes;
};

// Poisson branching process: offspring of type j ~ Poisson(w[i][j]*mu[j]).
TreeSample sample_x(const StepAkernel& A, int depth, Rng& rng, long long max_nodes = 1000000);

// Unimodular branching process (needs positive minimum degree): ancestor
// particles bear one ancestor child with type law w[i][j]*mu[j]/deg(i) plus
// ordinary children ~ Poisson(w[i][j]*mu[j]/deg(j)); ordinary particles bear
// only the Poisson part.
TreeSample sample_u(const StepKernel& K, int depth, Rng& rng, long long max_nodes = 1000000);

// Same with the root's ancestor child suppressed: distributed like the
// Poisson process on the Markov renormalization.
TreeSample sample_u_minus(const StepKernel& K, int depth, Rng& rng, long long max_nodes = 1000000);

// Sampling drivers: `samples` independent streams keyed by (seed, index), so
// reports do not depend on the thread count. Generation statistics extend
// beyond `depth` up to the horizon by evolving per-type counts only.
SimReport simulate_x(const StepAkernel& A, const SimConfig& cfg);
SimReport simulate_u(const StepKernel& K, const SimConfig& cfg);
SimReport simulate_xdagger(const StepKernel& K, const SimConfig& cfg);

}  // namespace stepkernel
