#pragma once

#include <optional>
#include <vector>

#include "stepkernel/graph.hpp"
#include "stepkernel/kernel.hpp"

namespace stepkernel {

// Iterated degree refinement. Starting from a single class, each round splits
// classes by the exact rational degree vector into the current classes,
// sig_c(i) = sum_{j: color(j)=c} w[i][j]*mu[j]  (row slices of W).
// The partition stabilizes after at most n-1 strict refinements. Color ids are
// canonical: classes are numbered by sorting (previous color, signature)
// lexicographically, so the numbering is invariant under type permutations.
struct StablePartition {
    std::vector<int> color;  // type -> color id
    int num_colors = 0;
    int rounds = 0;          // strict refinement rounds until stable
};

// Stable-partition summary (D, p): p[a] is the mass of class a and
// D[a][b] = sum_{j: color(j)=b} w[i][j]*mu[j] for any representative i of
// class a (stability makes the sum representative-independent).
struct Template {
    std::vector<Rat> p;
    RatMatrix D;
    bool operator==(const Template&) const = default;
};

struct RefineResult {
    StablePartition partition;
    Template tmpl;
};

RefineResult refine(const StepAkernel& A);

// Same, for raw (mu, w) data without the sum(mu)==1 invariant -- the joint
// refinement of two kernels runs on their block-diagonal union with each
// side's own (unnormalized) masses.
RefineResult refine_raw(const std::vector<Rat>& mu, const RatMatrix& w);

// Partition after every strict refinement round, ending with the stable one
// (monotonicity hook for tests).
std::vector<std::vector<int>> refine_trace(const std::vector<Rat>& mu, const RatMatrix& w);

// Does every class of `finer` sit inside one class of `coarser`?
bool partition_refines(const std::vector<int>& finer, const std::vector<int>& coarser);

// Fractional isomorphism: refine the block-diagonal disjoint union (each side
// keeping its own masses; no positive entry crosses the blocks) and compare
// the per-class mass contributed by each side.
struct FracIsoResult {
    bool iso = false;
    std::vector<Rat> class_mass_u, class_mass_w;  // per joint class
};
FracIsoResult frac_iso(const StepAkernel& U, const StepAkernel& W);

// Projective fractional isomorphism: the only candidate scale is forced,
// t = l1(U)/l1(W); decide frac_iso(U, t*W). Both kernels must be nonzero.
struct ProjFracIsoResult {
    bool iso = false;
    Rat t;
};
ProjFracIsoResult proj_frac_iso(const StepAkernel& U, const StepAkernel& W);

// Piecewise-projective fractional isomorphism: group the restrictions to
// connected components (masses renormalized) of both kernels by projective
// fractional isomorphism -- equivalently by frac_iso of the copies scaled to
// l1 == 1 -- and require each group to carry equal total original mass on
// both sides, plus equal isolated mass.
//
// kernel_factor_check decides plain fractional isomorphism along the factor
// route: group the degree-preserving rescaled pieces U[[C]] = mu(C) * (U
// restricted to C) by frac_iso and compare group masses (plus isolated mass).
// It agrees with frac_iso(U, W); piecewise_proj_frac_iso in turn agrees with
// frac_iso of the column renormalizations when min degrees are positive.
struct ComponentGroup {
    std::vector<int> u_components, w_components;  // indices into each side's decomposition
    Rat mass_u, mass_w;
};
struct GroupedDecision {
    bool iso = false;
    Rat isolated_mass_u, isolated_mass_w;
    std::vector<ComponentGroup> groups;
};
GroupedDecision piecewise_proj_frac_iso(const StepKernel& U, const StepKernel& W);
GroupedDecision kernel_factor_check(const StepKernel& U, const StepKernel& W);

// Graph analogue: coarsest equitable partition via integer degree refinement,
// template with p[a] = |class a| / v(G) and integer cross-degrees
// D[a][b] = #{neighbors of v in class b} for any representative v of class a.
struct GraphTemplate {
    std::vector<Rat> p;
    std::vector<std::vector<long long>> D;
    bool operator==(const GraphTemplate&) const = default;
};
struct GraphRefineResult {
    StablePartition partition;
    GraphTemplate tmpl;
};
GraphRefineResult graph_equitable(const Graph& G);

// Practional isomorphism: equal canonical equitable-partition templates.
bool practional_iso(const Graph& G, const Graph& H);

// Factor route for graphs: group connected components by practional
// isomorphism of the induced subgraphs and compare the vertex-count fractions
// per group. Agrees with practional_iso.
GroupedDecision graph_factor_check(const Graph& G, const Graph& H);

}  // namespace stepkernel
