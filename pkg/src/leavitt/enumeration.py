"""Exhaustive small-graph enumeration up to isomorphism, and the census of
small purely infinite simple graphs together with the consistency harness.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .graph import Graph, condition_L, graph_from_matrix, has_cycle, is_cofinal, to_dsl, vertex_matrix
from .compare import ALGEBRAS, ISOMORPHISM, MORITA, NO, RELATIONS, YES, compare
from .ktheory import det_sign

MAX_VERTICES = 4
MAX_PARALLEL_VERTICES = 3
PARALLEL_CAP = 2

Matrix = tuple[tuple[int, ...], ...]


def _permuted(m: Matrix, perm) -> Matrix:
    n = len(m)
    return tuple(tuple(m[perm[i]][perm[j]] for j in range(n)) for i in range(n))


def canonical_matrix(m) -> Matrix:
    """Least (row-major) multiplicity matrix over all vertex relabelings."""
    m = tuple(tuple(r) for r in m)
    return min(_permuted(m, p) for p in itertools.permutations(range(len(m))))


def canonical_form(g: Graph) -> Matrix:
    return canonical_matrix(vertex_matrix(g).to_rows())


def isomorphic(g: Graph, h: Graph) -> bool:
    return len(g) == len(h) and canonical_form(g) == canonical_form(h)


def canonical_graph(m, index: Optional[int] = None) -> Graph:
    c = canonical_matrix(m)
    n = len(c)
    name = f"G{n}_{index}" if index is not None else f"G{n}"
    return graph_from_matrix(c, name=name)


def _matrices(n: int, cap: int):
    for flat in itertools.product(range(cap + 1), repeat=n * n):
        yield tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n))


def enumerate_graphs(
    max_vertices: int,
    allow_parallel: bool = False,
    predicate: Optional[Callable[[Graph], bool]] = None,
    min_vertices: int = 1,
) -> list[Graph]:
    """One graph per isomorphism class with ``min_vertices..max_vertices`` vertices.

    Without ``allow_parallel`` each ordered pair (loops included) carries at
    most one edge; with it, at most two. Output is sorted by vertex count and
    then by canonical matrix.
    """
    if max_vertices > MAX_VERTICES:
        raise ValueError(f"enumeration is limited to {MAX_VERTICES} vertices")
    if allow_parallel and max_vertices > MAX_PARALLEL_VERTICES:
        raise ValueError(f"parallel-edge enumeration is limited to {MAX_PARALLEL_VERTICES} vertices")
    cap = PARALLEL_CAP if allow_parallel else 1
    out = []
    for n in range(min_vertices, max_vertices + 1):
        perms = list(itertools.permutations(range(n)))
        reps = []
        for m in _matrices(n, cap):
            # keep m only if it is the minimum of its orbit
            if all(_permuted(m, p) >= m for p in perms):
                reps.append(m)
        for k, m in enumerate(reps):
            g = graph_from_matrix(m, name=f"G{n}_{k}")
            if predicate is None or predicate(g):
                out.append(g)
    return out


def census_predicate(g: Graph) -> bool:
    """Cofinal, Condition (L), at least one cycle (parallels excluded by enumeration)."""
    return has_cycle(g) and condition_L(g) and is_cofinal(g)


@dataclass
class CensusReport:
    by_vertices: dict[int, int]
    graphs: list[Graph]
    dets: list[int]

    @property
    def all_det_negative(self) -> bool:
        return all(d < 0 for d in self.dets)

    def to_json(self) -> dict:
        return {
            "by_vertices": {str(k): v for k, v in sorted(self.by_vertices.items())},
            "all_det_negative": self.all_det_negative,
            "graphs": [to_dsl(g) for g in self.graphs],
        }


def small_census(max_vertices: int = 3) -> CensusReport:
    """Small graphs with no parallel edges that are cofinal, satisfy (L) and have a cycle."""
    graphs = enumerate_graphs(max_vertices, allow_parallel=False, predicate=census_predicate)
    counts = {n: 0 for n in range(1, max_vertices + 1)}
    dets = []
    for g in graphs:
        counts[len(g)] += 1
        d = det_sign(g)
        if d.det is None:
            raise AssertionError(f"census graph {g.name} has a sink")
        dets.append(d.det)
    return CensusReport(counts, graphs, dets)


@dataclass
class HarnessReport:
    cells: Counter = field(default_factory=Counter)
    guard_violations: list = field(default_factory=list)
    monotonicity_violations: list = field(default_factory=list)
    pairs: int = 0

    @property
    def ok(self) -> bool:
        return not self.guard_violations and not self.monotonicity_violations


def conjecture_harness(corpus: Sequence[Graph]) -> HarnessReport:
    """Run the verdict engine on all unordered pairs (self-pairs included).

    ``cells`` counts (relation, leavitt answer, cstar answer). A guard
    violation is a Leavitt YES paired with a C* NO for the same relation.
    """
    report = HarnessReport()
    for i, gE in enumerate(corpus):
        for gF in corpus[i:]:
            report.pairs += 1
            answers = {}
            for rel in RELATIONS:
                for alg in ALGEBRAS:
                    answers[rel, alg] = compare(gE, gF, rel, alg).answer
                report.cells[rel, answers[rel, "leavitt"], answers[rel, "cstar"]] += 1
                if answers[rel, "leavitt"] == YES and answers[rel, "cstar"] == NO:
                    report.guard_violations.append((gE.name, gF.name, rel))
            for alg in ALGEBRAS:
                if answers[ISOMORPHISM, alg] == YES and answers[MORITA, alg] != YES:
                    report.monotonicity_violations.append((gE.name, gF.name, alg))
    return report
