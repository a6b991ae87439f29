#pragma once

#include <string>
#include <vector>

#include "stepkernel/rational.hpp"

namespace stepkernel {

// A kernel of finite type: type i carries mass mu[i] > 0 with sum(mu) == 1,
// and w[i][j] >= 0 is the intensity between types i and j. StepAkernel makes
// no symmetry assumption ("asymmetric kernel"); StepKernel enforces w == w^T.
//
// degree(i) = sum_j w[i][j]*mu[j] is the slice integral of the row of type i,
// and l1_norm() = sum_{i,j} mu[i]*mu[j]*w[i][j] = sum_i mu[i]*degree(i).
struct StepAkernel {
    std::vector<Rat> mu;
    RatMatrix w;
    std::vector<std::string> labels;  // empty, or one label per type

    StepAkernel(std::vector<Rat> mu_, RatMatrix w_, std::vector<std::string> labels_ = {});

    int n() const { return static_cast<int>(mu.size()); }
    const std::string& label(int i) const;

    Rat degree(int i) const;
    std::vector<Rat> degrees() const;
    Rat l1_norm() const;
    Rat min_degree() const;
    Rat max_degree() const;
    Rat max_entry() const;
    bool is_symmetric() const;
};

struct StepKernel : StepAkernel {
    StepKernel(std::vector<Rat> mu_, RatMatrix w_, std::vector<std::string> labels_ = {});
    explicit StepKernel(StepAkernel a);
};

// Connected components of the support graph of w, plus the isolated part:
// isolated = types of degree 0 (for a symmetric kernel these are exactly the
// zero rows/columns); the remaining types split into components connected via
// positive entries, with no positive entry between two different parts.
struct ComponentDecomposition {
    std::vector<int> isolated;                // ascending
    std::vector<std::vector<int>> components; // each ascending, ordered by smallest member
    std::vector<Rat> masses;                  // mass of components[c]
    Rat isolated_mass;
};

ComponentDecomposition components(const StepKernel& K);

// t*W for rational t > 0.
StepAkernel scale(const StepAkernel& K, const Rat& t);
StepKernel scale(const StepKernel& K, const Rat& t);

// Restriction to a type subset Y (ascending, nonempty): masses renormalized to
// total 1, intensities unchanged. rescale_restrict is mu(Y) * restrict_to and
// preserves degrees when Y is a union of components.
StepKernel restrict_to(const StepKernel& K, const std::vector<int>& Y);
StepKernel rescale_restrict(const StepKernel& K, const std::vector<int>& Y);

// Markov renormalization W†(x,y) = W(x,y)/deg(y), with 0/0 = 0. Every column
// with deg > 0 then has unit mass: sum_i W†[i][j]*mu[i] == 1.
StepAkernel markov_renormalize(const StepKernel& K);

// Per-component degree normalization: on component C, W♡ = W * mu(C)/I_C with
// I_C the integral of W over C x C; zero elsewhere. Degrees become 1 on every
// non-isolated type, and W†(x,y)*deg_♡(y) == W♡(x,y).
StepKernel heart(const StepKernel& K);

// c_W = sqrt(sum_i mu[i]*deg(i)^2) / l1_norm. Scale-invariant, >= 1, and == 1
// exactly for kernels of constant degree. Requires l1_norm > 0.
double cw_constant(const StepAkernel& K);

}  // namespace stepkernel
