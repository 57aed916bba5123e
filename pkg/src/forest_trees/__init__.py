"""Exact counts of spanning trees of complete bipartite graphs through a fixed forest."""

from .closed_form import PairVector, phi_eval, tau_forest, tau_matching, tau_moon, tau_tree
from .forest import ComponentProfile, ForestInstance, enumerate_forests, random_forest, validate
from .kirchhoff import count_forced_trees, det_bareiss, enumerate_tau, laplacian_minor, tau_kirchhoff
from .weighted import (
    FactoredWeights,
    WeightedCompleteGraph,
    contract_forest,
    tau_alt_recursion,
    tau_factored,
    tau_inclusion_exclusion,
)

__version__ = "0.1.0"
