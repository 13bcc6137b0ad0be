"""Isomorphism and Morita-equivalence verdicts for pairs of graph algebras.

Rules fire in a fixed order: invariant mismatches (NO), the finite-dimensional
structure rule, the purely infinite simple rule, and otherwise UNKNOWN. A YES
is only ever produced by a settled classification result; an open question
stays UNKNOWN.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .classify import classify
from .graph import Graph, StabilizedGraph
from .ktheory import det_sign, group_iso, k0, k1, pair_iso

ISOMORPHISM = "isomorphism"
MORITA = "morita"
LEAVITT = "leavitt"
CSTAR = "cstar"
RELATIONS = (ISOMORPHISM, MORITA)
ALGEBRAS = (LEAVITT, CSTAR)

YES, NO, UNKNOWN = "YES", "NO", "UNKNOWN"

STRUCTURE = "prop-3.4-structure"
KP = "kp-classification"
DET_SIGN = "alps-det-sign"
K0_MISMATCH = "k0-invariant-mismatch"
K1_MISMATCH = "k1-invariant-mismatch"
UNIT_MISMATCH = "unit-class-mismatch"
BLOCK_COUNT = "morita-block-count"
MINFTY = "minfty-bridge"
OPEN_SIGN = "open-sign-question"
OUTSIDE = "outside-settled-regimes"

JUSTIFICATIONS = (STRUCTURE, KP, DET_SIGN, K0_MISMATCH, K1_MISMATCH, UNIT_MISMATCH,
                  BLOCK_COUNT, MINFTY, OPEN_SIGN, OUTSIDE)


@dataclass(frozen=True)
class Verdict:
    relation: str
    algebra: str
    answer: str
    justifications: tuple[str, ...]

    def to_json(self) -> dict:
        return {
            "relation": self.relation,
            "algebra": self.algebra,
            "answer": self.answer,
            "justifications": list(self.justifications),
        }


Answer = tuple[str, tuple[str, ...]]


def _k1_key(g, algebra):
    b = k1(g)
    if algebra == CSTAR:
        return (b.top_free_rank,)
    return (b.algebraic_divisible_rank, b.algebraic_free_rank)


def rule_invariant_mismatch(gE, gF, relation: str = ISOMORPHISM, algebra: str = LEAVITT) -> Optional[Answer]:
    """NO when a K-theoretic invariant of the relation differs.

    Isomorphisms preserve K0, K1, unitality and the unit class. Morita
    equivalences preserve the K-groups only.
    """
    a, b = k0(gE), k0(gF)
    if not group_iso(a, b):
        return NO, (K0_MISMATCH,)
    if _k1_key(gE, algebra) != _k1_key(gF, algebra):
        return NO, (K1_MISMATCH,)
    if relation == ISOMORPHISM:
        if (a.unit_class is None) != (b.unit_class is None):
            return NO, (UNIT_MISMATCH,)
        if a.unit_class is not None and not pair_iso(a, b):
            return NO, (UNIT_MISMATCH,)
    return None


def rule_finite_dimensional(gE: Graph, gF: Graph, relation: str) -> Optional[Answer]:
    cE, cF = classify(gE), classify(gF)
    if cE.acyclic and cF.acyclic:
        bE, bF = cE.finite_dimensional, cF.finite_dimensional
        if relation == ISOMORPHISM:
            return (YES if bE == bF else NO), (STRUCTURE,)
        return (YES if len(bE) == len(bF) else NO), (STRUCTURE, BLOCK_COUNT)
    if cE.acyclic != cF.acyclic:
        # finite-dimensional vs infinite-dimensional: neither iso nor Morita equivalent
        return NO, (STRUCTURE,)
    return None


def rule_purely_infinite(gE: Graph, gF: Graph, relation: str, algebra: str) -> Optional[Answer]:
    cE, cF = classify(gE), classify(gF)
    if not (cE.purely_infinite_simple and cF.purely_infinite_simple):
        return None
    a, b = k0(gE), k0(gF)
    if relation == ISOMORPHISM:
        if not pair_iso(a, b):
            return NO, (UNIT_MISMATCH,)
    elif not group_iso(a, b):
        return NO, (K0_MISMATCH,)
    extra = (MINFTY,) if relation == MORITA else ()
    if algebra == CSTAR:
        return YES, (KP,) + extra
    if det_sign(gE).value == det_sign(gF).value:
        return YES, (KP, DET_SIGN) + extra
    return UNKNOWN, (OPEN_SIGN,)


def _compare_finite(gE: Graph, gF: Graph, relation: str, algebra: str) -> Answer:
    for rule in (
        lambda: rule_invariant_mismatch(gE, gF, relation, algebra),
        lambda: rule_finite_dimensional(gE, gF, relation),
        lambda: rule_purely_infinite(gE, gF, relation, algebra),
    ):
        out = rule()
        if out is not None:
            return out
    return UNKNOWN, (OUTSIDE,)


def compare_stabilized(sE: StabilizedGraph, sF: StabilizedGraph, algebra: str) -> Verdict:
    """Isomorphism of stabilizations is Morita equivalence of the bases."""
    answer, why = _compare_finite(sE.base, sF.base, MORITA, algebra)
    return Verdict(ISOMORPHISM, algebra, answer, (MINFTY,) + tuple(j for j in why if j != MINFTY))


def compare(gE, gF, relation: str, algebra: str) -> Verdict:
    if relation not in RELATIONS:
        raise ValueError(f"unknown relation {relation!r}")
    if algebra not in ALGEBRAS:
        raise ValueError(f"unknown algebra {algebra!r}")
    sE, sF = isinstance(gE, StabilizedGraph), isinstance(gF, StabilizedGraph)
    if sE or sF:
        if relation == ISOMORPHISM and sE and sF:
            return compare_stabilized(gE, gF, algebra)
        if relation == ISOMORPHISM:
            # exactly one side is unital
            return Verdict(relation, algebra, NO, (UNIT_MISMATCH,))
        bE = gE.base if sE else gE
        bF = gF.base if sF else gF
        answer, why = _compare_finite(bE, bF, MORITA, algebra)
        return Verdict(relation, algebra, answer, (MINFTY,) + tuple(j for j in why if j != MINFTY))
    answer, why = _compare_finite(gE, gF, relation, algebra)
    return Verdict(relation, algebra, answer, why)
