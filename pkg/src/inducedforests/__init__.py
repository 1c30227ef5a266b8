"""Bounded-degree trees and forests: exact counts, asymptotics and G(n, p) experiments."""

from .asymptotics import (
    concentration_window_dense,
    concentration_window_sparse,
    log_factorial,
    solve_saddle_point,
    tree_count_asymptotic,
    tree_count_via_probability_identity,
    weighted_forest_sum_asymptotic,
)
from .exact import (
    ForestShape,
    expected_induced_rooted_forests,
    expected_induced_trees,
    forests_containing_forest,
    rooted_forests_bounded_degree_exact,
    trees_bounded_degree_exact,
    trees_containing_forest,
    trees_with_independent_set_and_degrees,
    weighted_forest_sum_exact,
)
from .gamma import GammaPolynomial, StructuralConstants, a_delta_sequence, gamma_eval, solve_alpha

__version__ = "0.1.0"
