"""Invariants, classification and element arithmetic for Leavitt path algebras
and graph C*-algebras of finite directed graphs."""

from .classify import Classification, classify
from .compare import Verdict, compare
from .elements import Element, LeavittAlgebra, Scalar
from .graph import Graph, StabilizedGraph, mat_n, parse_graph, rose, stabilize, to_dsl
from .ktheory import K0Data, K1Data, det_sign, k0, k1, pair_iso

__all__ = [
    "Classification", "classify", "Verdict", "compare", "Element", "LeavittAlgebra",
    "Scalar", "Graph", "StabilizedGraph", "mat_n", "parse_graph", "rose", "stabilize",
    "to_dsl", "K0Data", "K1Data", "det_sign", "k0", "k1", "pair_iso",
]
