"""Largest and smallest red-node counts in relaxed red-black trees on n keys."""

from rbred.builder import build_maximal, left_spine_colors
from rbred.dp import Objective, build_table, r_dp, reconstruct, s_dp
from rbred.fast import bit_weights, r_closed, r_rec, r_special_pow2m1, r_tri, red_black_ratio, triangle_t
from rbred.oracle import enumerate_valid, oracle_max_red, oracle_min_red
from rbred.tree import EMPTY, Color, RBTree, black_height, count_red, deserialize, node, serialize, to_dot, validate

__all__ = [
    "EMPTY",
    "Color",
    "Objective",
    "RBTree",
    "bit_weights",
    "black_height",
    "build_maximal",
    "build_table",
    "count_red",
    "deserialize",
    "enumerate_valid",
    "left_spine_colors",
    "node",
    "oracle_max_red",
    "oracle_min_red",
    "r_closed",
    "r_dp",
    "r_rec",
    "r_special_pow2m1",
    "r_tri",
    "reconstruct",
    "red_black_ratio",
    "s_dp",
    "serialize",
    "to_dot",
    "triangle_t",
    "validate",
]
