#pragma once

#include <optional>
#include <vector>

#include "stepkernel/ball.hpp"
#include "stepkernel/kernel.hpp"
#include "stepkernel/tree.hpp"

namespace stepkernel {

// Probability that the Poisson branching process started from one particle of
// type i (offspring of type j ~ Poisson(w[i][j]*mu[j]), independently per
// type), truncated below level k, is isomorphic to T as a rooted tree.
// Recursion over the root profile of T = (T_t with multiplicity l_t):
//   P_0(i, leaf) = 1,
//   P_k(i, T) = e^{-deg(i)} * prod_t (sum_j w[i][j]*mu[j]*P_{k-1}(j, T_t))^{l_t} / l_t!
// Requires h(T) <= k.
double x_tree_prob_at(const StepAkernel& A, int i, const RootedTree& T, int k);

// Root type drawn from mu.
double x_tree_prob(const StepAkernel& A, const RootedTree& T, int k);

// Same for the non-root run attached to a kernel with
// positive minimum degree: the root and the spine of "ancestor" particles
// each have one ancestor child (type j with probability w[i][j]*mu[j]/deg(i))
// plus Poisson "ordinary" children with the Markov-renormalized intensities
// w[i][j]*mu[j]/deg(j); ordinary particles branch like the Poisson process on
// the renormalized kernel. Validated against simulation (see tests).
double u_tree_prob(const StepKernel& K, const RootedTree& T, int r);

// Exact law of the depth-k truncation over the classes enumerated up to
// max_vertices; the unenumerated mass goes to residual.
BallDistribution x_ball_distribution(const StepAkernel& A, int k, int max_vertices);
BallDistribution u_ball_distribution(const StepKernel& K, int r, int max_vertices);

// Survival probability per type: s = F(s) with F_i(s) = 1 - exp(-sum_j
// w[i][j]*mu[j]*s_j), iterated from s == 1 so the limit is the maximal fixed
// point, then polished with safeguarded Newton steps (the fixed-point
// iteration alone stalls at criticality). gamma = sum_i mu[i]*s[i].
struct SurvivalResult {
    std::vector<double> s;
    double gamma = 0.0;
    double residual = 0.0;  // max_i |s_i - F_i(s)| at return
    long long iterations = 0;
    bool converged = false;
};
SurvivalResult survival(const StepAkernel& K, double tol = 1e-9, long long max_iter = 200000);

// First (tree, level) pair whose truncation probabilities differ by more than
// 1e-9, scanning levels k = 1..max_height and for each k the enumerated trees
// with h <= k, v <= max_vertices in (vertices, code) order. Equal kernels (in
// the fractional-isomorphism sense) make every pair agree, so absence of a
// witness within the bounds is only evidence, not proof, of equivalence.
struct Separation {
    RootedTree tree;
    int k = 0;
    double pu = 0.0, pw = 0.0;
};
std::optional<Separation> separating_tree_search(const StepAkernel& U, const StepAkernel& W,
                                                 int max_height, int max_vertices);

}  // namespace stepkernel
