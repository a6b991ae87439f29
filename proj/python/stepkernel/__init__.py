"""Exact deciders and branching-process tools for finite-type kernels."""

from ._core import (
    Akernel,
    Kernel,
    canonical_tree,
    components,
    enumerate_trees,
    frac_iso,
    heart,
    kernel_factor_check,
    load_kernel,
    markov_renormalize,
    piecewise_proj_frac_iso,
    proj_frac_iso,
    refine,
    run_cli,
    scale,
    separating_tree_search,
    simulate,
    survival,
    u_ball_distribution,
    u_tree_prob,
    ust_ball_distribution,
    x_ball_distribution,
    x_tree_prob,
)

__version__ = "0.1.0"

__all__ = [
    "Akernel",
    "Kernel",
    "canonical_tree",
    "components",
    "enumerate_trees",
    "frac_iso",
    "heart",
    "kernel_factor_check",
    "load_kernel",
    "markov_renormalize",
    "piecewise_proj_frac_iso",
    "proj_frac_iso",
    "refine",
    "run_cli",
    "scale",
    "separating_tree_search",
    "simulate",
    "survival",
    "u_ball_distribution",
    "u_tree_prob",
    "ust_ball_distribution",
    "x_ball_distribution",
    "x_tree_prob",
]
