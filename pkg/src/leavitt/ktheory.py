"""K-theory of graph algebras of finite graphs.

K0 is the cokernel of the sink-adjusted map ``N`` (columns of ``A^t - I`` for
regular vertices only), with the unit class given by the all-ones vector. The
same group serves the Leavitt path algebra and the graph C*-algebra.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from functools import lru_cache
from math import gcd, prod
from typing import Optional

from .graph import Graph, StabilizedGraph, regular_vertices, sinks, vertex_matrix
from .zlinalg import IntMatrix, cokernel, determinant, rank

MAX_TORSION_ORDER = 10_000
MAX_HOM_TUPLES = 2_000_000


class CapacityError(RuntimeError):
    """A computation would exceed the brute-force limits."""


UnitClass = tuple[tuple[int, ...], tuple[int, ...]]


@dataclass(frozen=True)
class K0Data:
    invariant_factors: tuple[int, ...]
    free_rank: int
    unit_class: Optional[UnitClass]
    presentation_matrix: IntMatrix

    @property
    def group(self) -> tuple[tuple[int, ...], int]:
        return self.invariant_factors, self.free_rank

    def scaled_unit(self, n: int) -> "K0Data":
        """Copy with the unit class replaced by ``n`` times itself."""
        if self.unit_class is None:
            raise ValueError("no unit class")
        t, v = self.unit_class
        t = tuple((n * x) % d for x, d in zip(t, self.invariant_factors))
        return replace(self, unit_class=(t, tuple(n * x for x in v)))


@dataclass(frozen=True)
class K1Data:
    top_free_rank: int
    algebraic_divisible_rank: int
    algebraic_free_rank: int


@dataclass(frozen=True)
class DetSign:
    value: str  # "negative" | "zero" | "positive" | "undefined_has_sinks"
    det: Optional[int] = None

    @property
    def symbol(self) -> str:
        return {"negative": "-", "zero": "0", "positive": "+"}.get(self.value, "undefined")


def presentation_map(g: Graph) -> IntMatrix:
    """|E0| x |E0_reg| matrix; column v is ``(A^t - I) e_v``."""
    A = vertex_matrix(g)
    reg = regular_vertices(g)
    cols = [j for j, v in enumerate(g.vertices) if v in reg]
    n = len(g.vertices)
    rows = [[A[j, i] - (i == j) for j in cols] for i in range(n)]
    return IntMatrix.from_rows(rows, n, len(cols))


@lru_cache(maxsize=4096)
def _k0_graph(g: Graph) -> K0Data:
    N = presentation_map(g)
    ck = cokernel(N)
    unit = ck.reduce([1] * len(g.vertices))
    return K0Data(ck.invariant_factors, ck.free_rank, unit, N)


def k0(g: Graph | StabilizedGraph) -> K0Data:
    if isinstance(g, StabilizedGraph):
        return replace(_k0_graph(g.base), unit_class=None)
    return _k0_graph(g)


def k1(g: Graph | StabilizedGraph) -> K1Data:
    if isinstance(g, StabilizedGraph):
        g = g.base
    N = presentation_map(g)
    rho = rank(N)
    free = N.cols - rho
    return K1Data(free, N.rows - rho, free)


def det_sign(g: Graph) -> DetSign:
    if isinstance(g, StabilizedGraph) or sinks(g):
        return DetSign("undefined_has_sinks")
    n = len(g.vertices)
    d = determinant(IntMatrix.identity(n) - vertex_matrix(g).transpose())
    return DetSign("negative" if d < 0 else "zero" if d == 0 else "positive", d)


# ---------------------------------------------------------------------------
# (group, unit) pairs


def _elements(factors):
    return itertools.product(*(range(d) for d in factors))


def _killed_by(factors, n):
    """Elements x of (+) Z/d_i with n x = 0."""
    ranges = [range(0, d, d // gcd(d, n)) for d in factors]
    return list(itertools.product(*ranges))


def _generated_order(factors, images) -> int:
    """Order of the subgroup generated by ``images``."""
    seen = {tuple(0 for _ in factors)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for x in frontier:
            for g in images:
                y = tuple((a + b) % d for a, b, d in zip(x, g, factors))
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return len(seen)


@lru_cache(maxsize=256)
def torsion_automorphisms(factors: tuple[int, ...]) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """All automorphisms of (+) Z/d_i, each given by its generator images.

    Candidates send generator j to any element killed by d_j; the bijective
    ones are kept.
    """
    order = prod(factors)
    if order > MAX_TORSION_ORDER:
        raise CapacityError(f"torsion order {order} exceeds {MAX_TORSION_ORDER}")
    choices = [_killed_by(factors, d) for d in factors]
    if prod(len(c) for c in choices) > MAX_HOM_TUPLES:
        raise CapacityError("too many candidate torsion homomorphisms")
    out = []
    for images in itertools.product(*choices):
        if _generated_order(factors, images) == order:
            out.append(images)
    return tuple(out)


def _apply(factors, images, t):
    acc = [0] * len(factors)
    for coeff, img in zip(t, images):
        for i, x in enumerate(img):
            acc[i] += coeff * x
    return tuple(a % d for a, d in zip(acc, factors))


@dataclass(frozen=True)
class PairDescriptor:
    invariant_factors: tuple[int, ...]
    free_rank: int
    unit_free_gcd: int
    unit_torsion_orbit: tuple[int, ...]


def pair_canonical_form(k: K0Data) -> PairDescriptor:
    """Complete invariant of (K0, [1]) up to isomorphism.

    Automorphisms of T (+) Z^f act on a unit (t, v) as
    (t, v) -> (alpha t + beta v, delta v). So v only matters through g = gcd(v),
    and t through its Aut(T)-orbit in T / gT.
    """
    if k.unit_class is None:
        raise ValueError("pair canonical form needs a unit class")
    factors = k.invariant_factors
    t, v = k.unit_class
    g = 0
    for x in v:
        g = gcd(g, x)
    # T / gT = (+) Z/gcd(g, d_i); gcd(0, d) = d
    mods = tuple(gcd(g, d) for d in factors)
    best = None
    for images in torsion_automorphisms(factors):
        image = _apply(factors, images, t)
        rep = tuple(x % m for x, m in zip(image, mods))
        if best is None or rep < best:
            best = rep
    return PairDescriptor(factors, k.free_rank, g, best if best is not None else ())


def group_iso(a: K0Data, b: K0Data) -> bool:
    return a.group == b.group


def pair_iso(a: K0Data, b: K0Data) -> bool:
    if a.unit_class is None or b.unit_class is None:
        raise ValueError("pair_iso needs unit classes on both sides")
    return group_iso(a, b) and pair_canonical_form(a) == pair_canonical_form(b)


def k0_from_matrix(N: IntMatrix, unit_vector) -> K0Data:
    """K0-style data for an arbitrary presentation matrix and distinguished vector."""
    ck = cokernel(N)
    return K0Data(ck.invariant_factors, ck.free_rank, ck.reduce(unit_vector), N)


def invariants_json(g: Graph | StabilizedGraph) -> dict:
    a = k0(g)
    b = k1(g)
    d = det_sign(g)
    unit = None
    if a.unit_class is not None:
        unit = {"torsion": list(a.unit_class[0]), "free": list(a.unit_class[1])}
    return {
        "k0": {"invariant_factors": list(a.invariant_factors), "free_rank": a.free_rank, "unit_class": unit},
        "k1": {
            "top_free_rank": b.top_free_rank,
            "algebraic": {"divisible_rank": b.algebraic_divisible_rank, "free_rank": b.algebraic_free_rank},
        },
        "det": {"sign": d.symbol, "value": None if d.det is None else str(d.det)},
    }
