"""Exact computations with the extended Thompson group acting on the basilica
Julia set of z^2 - 1."""

from .circle import Angle, Arc, angle, angle_add, arc_contains, cyclic_between, double, halves
from .group import (
    act_on_component,
    decompose_to_word,
    extend_inner_to_outer,
    iota_map,
    rho_map,
    sigma_map,
    transitivity_element,
    word_to_map,
)
from .lamination import build_lamination, d_points, inner_to_outer, partition, partner, preserves_lamination
from .plmap import PLCircleMap, compose, generator, invert, make_plmap, membership_class
from .tree import address_from_leaf, leaf_from_address
from .words import GroupWord, parse_word

__all__ = [
    "Angle", "Arc", "angle", "angle_add", "arc_contains", "cyclic_between", "double", "halves",
    "act_on_component", "decompose_to_word", "extend_inner_to_outer", "iota_map", "rho_map",
    "sigma_map", "transitivity_element", "word_to_map", "build_lamination", "d_points",
    "inner_to_outer", "partition", "partner", "preserves_lamination", "PLCircleMap", "compose",
    "generator", "invert", "make_plmap", "membership_class", "address_from_leaf",
    "leaf_from_address", "GroupWord", "parse_word",
]
