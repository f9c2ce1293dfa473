"""Exact subtree polynomials, mean subtree orders and edge-addition searches."""

__version__ = "0.1.0"

from .exact import IntPolynomial, log_deriv_at_one, rational_cmp, to_decimal
from .graph import Edge, MultiGraph, add_edge, delete_edge, induced_subgraph, is_connected, non_edges
from .canon import CanonicalForm, canonical_form
from .generate import enumerate_connected_graphs, enumerate_trees
from .graph6 import parse_graph6, to_graph6
from .engine import (
    LocalProfile,
    SubtreeProfile,
    local_polynomial_edge,
    local_polynomial_vertex,
    mu_star,
    spanning_tree_count,
    subtree_polynomial,
    tree_subtree_polynomial,
)

__all__ = [
    "CanonicalForm",
    "Edge",
    "IntPolynomial",
    "LocalProfile",
    "MultiGraph",
    "SubtreeProfile",
    "add_edge",
    "canonical_form",
    "delete_edge",
    "enumerate_connected_graphs",
    "enumerate_trees",
    "induced_subgraph",
    "is_connected",
    "local_polynomial_edge",
    "local_polynomial_vertex",
    "log_deriv_at_one",
    "mu_star",
    "non_edges",
    "parse_graph6",
    "rational_cmp",
    "spanning_tree_count",
    "subtree_polynomial",
    "to_decimal",
    "to_graph6",
    "tree_subtree_polynomial",
]
