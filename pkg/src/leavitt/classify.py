"""Structural classification of graph algebras of finite graphs."""

from __future__ import annotations

from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Optional

from .graph import (
    Graph,
    StabilizedGraph,
    condition_L,
    has_cycle,
    is_cofinal,
    reaches_all_sinks,
    sinks,
    topological_order,
)


@dataclass(frozen=True)
class Classification:
    unital: bool
    acyclic: bool
    finite_dimensional: Optional[tuple[int, ...]]
    simple: bool
    purely_infinite_simple: bool
    af: bool

    def to_json(self) -> dict:
        d = asdict(self)
        if d["finite_dimensional"] is not None:
            d["finite_dimensional"] = list(d["finite_dimensional"])
        return d


def path_counts_to_sinks(g: Graph) -> dict[str, int]:
    """Number of paths ending at each sink, the trivial path included."""
    order = topological_order(g)  # raises on a cycle
    ending = {v: 1 for v in g.vertices}
    for u in order:
        for w in g.successors(u):
            ending[w] += ending[u]
    ts = sinks(g)
    return {v: ending[v] for v in g.vertices if v in ts}


def finite_dimensional_structure(g: Graph) -> tuple[int, ...]:
    """Sizes of the matrix blocks, sorted; the algebra is the sum of M_n(C) over them."""
    if has_cycle(g):
        raise ValueError(f"graph {g.name} has a cycle; its algebras are infinite-dimensional")
    return tuple(sorted(path_counts_to_sinks(g).values()))


def is_simple(g: Graph) -> bool:
    return condition_L(g) and is_cofinal(g) and reaches_all_sinks(g)


def is_purely_infinite_simple(g: Graph) -> bool:
    return has_cycle(g) and is_simple(g)


@lru_cache(maxsize=4096)
def _classify_graph(g: Graph) -> Classification:
    acyclic = not has_cycle(g)
    simple = is_simple(g)
    c = Classification(
        unital=True,
        acyclic=acyclic,
        finite_dimensional=finite_dimensional_structure(g) if acyclic else None,
        simple=simple,
        purely_infinite_simple=simple and not acyclic,
        af=acyclic,
    )
    if c.simple:
        # simple algebras are either matrix-algebra (AF) or purely infinite, never both
        assert c.af != c.purely_infinite_simple
        if c.acyclic:
            assert len(c.finite_dimensional) == 1
    return c


def classify(g: Graph | StabilizedGraph) -> Classification:
    if isinstance(g, StabilizedGraph):
        # M_inf(A): same ideal structure, never unital, infinite-dimensional
        c = _classify_graph(g.base)
        return Classification(False, c.acyclic, None, c.simple, c.purely_infinite_simple, c.af)
    return _classify_graph(g)
