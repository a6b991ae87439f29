#include "stepkernel/refine.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace stepkernel {

namespace {

// One refinement round on exact rational data. Signatures are degree vectors
// into the current classes; new ids are ranks of the sorted distinct
// (previous color, signature) keys, which keeps the numbering canonical under
// type permutations and leaves ids unchanged on a stable partition.
std::vector<int> split_round(const std::vector<Rat>& mu, const RatMatrix& w,
                             const std::vector<int>& color, int num_colors) {
    const int n = static_cast<int>(mu.size());
    using Key = std::pair<int, std::vector<Rat>>;
    std::vector<Key> key(n);
    for (int i = 0; i < n; ++i) {
        std::vector<Rat> sig(num_colors, Rat(0));
        for (int j = 0; j < n; ++j) sig[color[j]] += w[i][j] * mu[j];
        key[i] = {color[i], std::move(sig)};
    }
    std::map<Key, int> rank;
    for (const auto& k : key) rank.emplace(k, 0);
    int next = 0;
    for (auto& [k, r] : rank) r = next++;
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = rank[key[i]];
    return out;
}

int count_colors(const std::vector<int>& color) {
    return color.empty() ? 0 : *std::max_element(color.begin(), color.end()) + 1;
}

}  // namespace

std::vector<std::vector<int>> refine_trace(const std::vector<Rat>& mu, const RatMatrix& w) {
    // trace[0] is the trivial partition; each later entry is one strict
    // refinement; the last entry is stable.
    const int n = static_cast<int>(mu.size());
    std::vector<std::vector<int>> trace{std::vector<int>(n, 0)};
    for (;;) {
        std::vector<int> next = split_round(mu, w, trace.back(), count_colors(trace.back()));
        if (next == trace.back()) return trace;
        trace.push_back(std::move(next));
    }
}

RefineResult refine_raw(const std::vector<Rat>& mu, const RatMatrix& w) {
    auto trace = refine_trace(mu, w);
    RefineResult out;
    out.partition.color = trace.back();
    out.partition.num_colors = count_colors(out.partition.color);
    out.partition.rounds = static_cast<int>(trace.size()) - 1;

    const int n = static_cast<int>(mu.size());
    const int k = out.partition.num_colors;
    out.tmpl.p.assign(k, Rat(0));
    out.tmpl.D.assign(k, std::vector<Rat>(k, Rat(0)));
    std::vector<int> rep(k, -1);
    for (int i = 0; i < n; ++i) {
        int c = out.partition.color[i];
        out.tmpl.p[c] += mu[i];
        if (rep[c] < 0) rep[c] = i;
    }
    for (int a = 0; a < k; ++a)
        for (int j = 0; j < n; ++j) out.tmpl.D[a][out.partition.color[j]] += w[rep[a]][j] * mu[j];
    return out;
}

RefineResult refine(const StepAkernel& A) { return refine_raw(A.mu, A.w); }

bool partition_refines(const std::vector<int>& finer, const std::vector<int>& coarser) {
    if (finer.size() != coarser.size()) return false;
    std::map<int, int> to_coarse;
    for (std::size_t i = 0; i < finer.size(); ++i) {
        auto [it, inserted] = to_coarse.emplace(finer[i], coarser[i]);
        if (!inserted && it->second != coarser[i]) return false;
    }
    return true;
}

FracIsoResult frac_iso(const StepAkernel& U, const StepAkernel& W) {
    const int nu = U.n(), nw = W.n(), n = nu + nw;
    std::vector<Rat> mu(n);
    RatMatrix w(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < nu; ++i) {
        mu[i] = U.mu[i];
        for (int j = 0; j < nu; ++j) w[i][j] = U.w[i][j];
    }
    for (int i = 0; i < nw; ++i) {
        mu[nu + i] = W.mu[i];
        for (int j = 0; j < nw; ++j) w[nu + i][nu + j] = W.w[i][j];
    }
    RefineResult rr = refine_raw(mu, w);
    FracIsoResult out;
    out.class_mass_u.assign(rr.partition.num_colors, Rat(0));
    out.class_mass_w.assign(rr.partition.num_colors, Rat(0));
    for (int i = 0; i < nu; ++i) out.class_mass_u[rr.partition.color[i]] += U.mu[i];
    for (int i = 0; i < nw; ++i) out.class_mass_w[rr.partition.color[nu + i]] += W.mu[i];
    out.iso = out.class_mass_u == out.class_mass_w;
    return out;
}

ProjFracIsoResult proj_frac_iso(const StepAkernel& U, const StepAkernel& W) {
    Rat lu = U.l1_norm(), lw = W.l1_norm();
    if (lu == 0 || lw == 0)
        throw std::invalid_argument("projective fractional isomorphism needs nonzero kernels");
    ProjFracIsoResult out;
    out.t = lu / lw;
    out.iso = frac_iso(U, scale(W, out.t)).iso;
    return out;
}

namespace {

// Shared grouping machinery for the two component-wise deciders. `pieces`
// holds one kernel per non-isolated component; `same` decides group
// membership.
template <typename Same>
GroupedDecision group_components(const std::vector<StepKernel>& pieces_u,
                                 const std::vector<StepKernel>& pieces_w,
                                 const std::vector<Rat>& masses_u, const std::vector<Rat>& masses_w,
                                 const Rat& iso_mass_u, const Rat& iso_mass_w, Same same) {
    GroupedDecision out;
    out.isolated_mass_u = iso_mass_u;
    out.isolated_mass_w = iso_mass_w;
    std::vector<const StepKernel*> rep;
    auto place = [&](const StepKernel& piece, int index, bool is_u) {
        for (std::size_t g = 0; g < rep.size(); ++g)
            if (same(*rep[g], piece)) {
                auto& grp = out.groups[g];
                (is_u ? grp.u_components : grp.w_components).push_back(index);
                (is_u ? grp.mass_u : grp.mass_w) += is_u ? masses_u[index] : masses_w[index];
                return;
            }
        rep.push_back(&piece);
        ComponentGroup grp;
        grp.mass_u = 0;
        grp.mass_w = 0;
        (is_u ? grp.u_components : grp.w_components).push_back(index);
        (is_u ? grp.mass_u : grp.mass_w) = is_u ? masses_u[index] : masses_w[index];
        out.groups.push_back(std::move(grp));
    };
    for (std::size_t c = 0; c < pieces_u.size(); ++c) place(pieces_u[c], static_cast<int>(c), true);
    for (std::size_t c = 0; c < pieces_w.size(); ++c) place(pieces_w[c], static_cast<int>(c), false);

    out.iso = out.isolated_mass_u == out.isolated_mass_w;
    for (const auto& g : out.groups) out.iso = out.iso && g.mass_u == g.mass_w;
    return out;
}

}  // namespace

GroupedDecision piecewise_proj_frac_iso(const StepKernel& U, const StepKernel& W) {
    ComponentDecomposition cu = components(U), cw = components(W);
    // Restriction to a component, rescaled so l1 == 1: two components are
    // projectively fractionally isomorphic iff these normal forms are
    // fractionally isomorphic.
    auto normalized = [](const StepKernel& K, const ComponentDecomposition& cd) {
        std::vector<StepKernel> out;
        for (const auto& comp : cd.components) {
            StepKernel piece = restrict_to(K, comp);
            out.push_back(scale(piece, 1 / piece.l1_norm()));
        }
        return out;
    };
    return group_components(normalized(U, cu), normalized(W, cw), cu.masses, cw.masses,
                            cu.isolated_mass, cw.isolated_mass,
                            [](const StepKernel& a, const StepKernel& b) { return frac_iso(a, b).iso; });
}

GroupedDecision kernel_factor_check(const StepKernel& U, const StepKernel& W) {
    ComponentDecomposition cu = components(U), cw = components(W);
    auto rescaled = [](const StepKernel& K, const ComponentDecomposition& cd) {
        std::vector<StepKernel> out;
        for (const auto& comp : cd.components) out.push_back(rescale_restrict(K, comp));
        return out;
    };
    return group_components(rescaled(U, cu), rescaled(W, cw), cu.masses, cw.masses,
                            cu.isolated_mass, cw.isolated_mass,
                            [](const StepKernel& a, const StepKernel& b) { return frac_iso(a, b).iso; });
}

namespace {

// Integer refinement round for graphs (signature = neighbor counts per class).
std::vector<int> graph_split_round(const Graph& G, const std::vector<int>& color, int num_colors) {
    using Key = std::pair<int, std::vector<long long>>;
    std::vector<Key> key(G.n);
    for (int v = 0; v < G.n; ++v) {
        std::vector<long long> sig(num_colors, 0);
        for (int u : G.adj[v]) ++sig[color[u]];
        key[v] = {color[v], std::move(sig)};
    }
    std::map<Key, int> rank;
    for (const auto& k : key) rank.emplace(k, 0);
    int next = 0;
    for (auto& [k, r] : rank) r = next++;
    std::vector<int> out(G.n);
    for (int v = 0; v < G.n; ++v) out[v] = rank[key[v]];
    return out;
}

}  // namespace

GraphRefineResult graph_equitable(const Graph& G) {
    std::vector<int> color(G.n, 0);
    int rounds = 0;
    for (;;) {
        std::vector<int> next = graph_split_round(G, color, count_colors(color));
        if (next == color) break;
        color = std::move(next);
        ++rounds;
    }
    GraphRefineResult out;
    out.partition.color = color;
    out.partition.num_colors = count_colors(color);
    out.partition.rounds = rounds;
    const int k = out.partition.num_colors;
    out.tmpl.p.assign(k, Rat(0));
    out.tmpl.D.assign(k, std::vector<long long>(k, 0));
    std::vector<int> rep(k, -1);
    std::vector<long long> size(k, 0);
    for (int v = 0; v < G.n; ++v) {
        ++size[color[v]];
        if (rep[color[v]] < 0) rep[color[v]] = v;
    }
    for (int a = 0; a < k; ++a) {
        out.tmpl.p[a] = Rat(static_cast<long>(size[a])) / G.n;
        for (int u : G.adj[rep[a]]) ++out.tmpl.D[a][color[u]];
    }
    return out;
}

bool practional_iso(const Graph& G, const Graph& H) {
    // Canonical class numbering makes the templates directly comparable: two
    // graphs admit a common equitable-partition template iff their coarsest
    // ones coincide after canonical renumbering.
    return graph_equitable(G).tmpl == graph_equitable(H).tmpl;
}

GroupedDecision graph_factor_check(const Graph& G, const Graph& H) {
    auto comps_g = graph_components(G), comps_h = graph_components(H);
    GroupedDecision out;
    out.isolated_mass_u = 0;
    out.isolated_mass_w = 0;
    std::vector<Graph> rep;
    auto place = [&](const Graph& whole, const std::vector<int>& comp, int index, bool is_u) {
        Graph piece = induced_subgraph(whole, comp);
        Rat mass = Rat(static_cast<long>(comp.size())) / whole.n;
        for (std::size_t g = 0; g < rep.size(); ++g)
            if (practional_iso(rep[g], piece)) {
                auto& grp = out.groups[g];
                (is_u ? grp.u_components : grp.w_components).push_back(index);
                (is_u ? grp.mass_u : grp.mass_w) += mass;
                return;
            }
        rep.push_back(std::move(piece));
        ComponentGroup grp;
        grp.mass_u = 0;
        grp.mass_w = 0;
        (is_u ? grp.u_components : grp.w_components).push_back(index);
        (is_u ? grp.mass_u : grp.mass_w) = mass;
        out.groups.push_back(std::move(grp));
    };
    for (std::size_t c = 0; c < comps_g.size(); ++c) place(G, comps_g[c], static_cast<int>(c), true);
    for (std::size_t c = 0; c < comps_h.size(); ++c) place(H, comps_h[c], static_cast<int>(c), false);
    out.iso = true;
    for (const auto& g : out.groups) out.iso = out.iso && g.mass_u == g.mass_w;
    return out;
}

}  // namespace stepkernel
