"""Finite directed multigraphs: data model, text format, structural predicates
and the head-attachment constructions (matrix amplification, stabilization).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import NamedTuple

from .zlinalg import IntMatrix

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
STABILIZED_HEADER = "# stabilized"


class DSLError(ValueError):
    """Raised for malformed graph source; carries a 1-based line/column."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


class Edge(NamedTuple):
    id: str
    source: str
    range: str


@dataclass(frozen=True)
class Graph:
    """A finite directed multigraph.

    Vertex order is declaration order and fixes row/column indexing of every
    matrix derived from the graph.
    """

    name: str
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _out: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        if len(set(self.vertices)) != len(self.vertices):
            raise ValueError("duplicate vertex id")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate edge id")
        vset = set(self.vertices)
        for e in self.edges:
            if e.source not in vset or e.range not in vset:
                raise ValueError(f"edge {e.id} references an undeclared vertex")
        out: dict[str, list[Edge]] = {v: [] for v in self.vertices}
        for e in self.edges:
            out[e.source].append(e)
        object.__setattr__(self, "_out", {v: tuple(es) for v, es in out.items()})

    @classmethod
    def from_edges(cls, name: str, vertices, edges) -> "Graph":
        """Build from ``(id, src, dst)`` triples."""
        return cls(name, tuple(vertices), tuple(Edge(*e) for e in edges))

    def index(self, v: str) -> int:
        return self.vertices.index(v)

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def out_edges(self, v: str) -> tuple[Edge, ...]:
        return self._out[v]

    def successors(self, v: str) -> list[str]:
        return [e.range for e in self._out[v]]

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class StabilizedGraph:
    """Symbolic stand-in for the graph with an infinite head at every vertex.

    Nothing infinite is materialized; every query is answered from ``base``.
    """

    base: Graph


@dataclass(frozen=True)
class Path:
    """A finite path; length-0 paths are anchored at a single vertex."""

    source: str
    range: str
    edges: tuple[str, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)

    @classmethod
    def vertex(cls, v: str) -> "Path":
        return cls(v, v, ())

    @classmethod
    def of_edges(cls, g: Graph, edges) -> "Path":
        edges = tuple(edges)
        if not edges:
            raise ValueError("use Path.vertex for length-0 paths")
        recs = [g.edge(e) for e in edges]
        for a, b in zip(recs, recs[1:]):
            if a.range != b.source:
                raise ValueError(f"edges {a.id} and {b.id} do not compose")
        return cls(recs[0].source, recs[-1].range, edges)


@dataclass(frozen=True)
class Cycle:
    path: Path

    @property
    def edges(self) -> tuple[str, ...]:
        return self.path.edges

    def vertices(self, g: Graph) -> tuple[str, ...]:
        return tuple(g.edge(e).source for e in self.path.edges)


# ---------------------------------------------------------------------------
# text format


def _tokens(line: str):
    for m in re.finditer(r"\S+", line):
        yield m.group(0), m.start() + 1


def _parse(text: str) -> tuple[Graph, bool]:
    name = None
    stabilized = False
    vertices: list[str] = []
    vset: set[str] = set()
    edges: list[Edge] = []
    eset: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if name is None and line == STABILIZED_HEADER:
                stabilized = True
            continue
        toks = list(_tokens(raw))
        kw, kwcol = toks[0]
        args = toks[1:]

        def ident(tok):
            word, col = tok
            if not IDENT_RE.match(word):
                raise DSLError(f"invalid identifier {word!r}", lineno, col)
            return word

        if name is None:
            if kw != "graph" or len(args) != 1:
                raise DSLError("expected 'graph <identifier>'", lineno, kwcol)
            name = ident(args[0])
        elif kw == "vertex":
            if len(args) != 1:
                raise DSLError("expected 'vertex <id>'", lineno, kwcol)
            if edges:
                raise DSLError("vertex declared after edges", lineno, kwcol)
            v = ident(args[0])
            if v in vset:
                raise DSLError(f"duplicate vertex id {v!r}", lineno, args[0][1])
            vset.add(v)
            vertices.append(v)
        elif kw == "edge":
            if len(args) != 3:
                raise DSLError("expected 'edge <id> <src> <dst>'", lineno, kwcol)
            eid, src, dst = (ident(t) for t in args)
            if eid in eset:
                raise DSLError(f"duplicate edge id {eid!r}", lineno, args[0][1])
            for word, (_, col) in ((src, args[1]), (dst, args[2])):
                if word not in vset:
                    raise DSLError(f"undeclared vertex {word!r}", lineno, col)
            eset.add(eid)
            edges.append(Edge(eid, src, dst))
        elif kw == "graph":
            raise DSLError("duplicate 'graph' line", lineno, kwcol)
        else:
            raise DSLError(f"unknown keyword {kw!r}", lineno, kwcol)
    if name is None:
        raise DSLError("missing 'graph <identifier>' line", 1, 1)
    return Graph(name, tuple(vertices), tuple(edges)), stabilized


def parse_graph(text: str) -> Graph:
    """Parse graph source into a validated Graph (a stabilized header is ignored)."""
    return _parse(text)[0]


def parse_document(text: str) -> Graph | StabilizedGraph:
    """Like :func:`parse_graph` but honours a leading ``# stabilized`` header."""
    g, stabilized = _parse(text)
    return StabilizedGraph(g) if stabilized else g


def to_dsl(g: Graph | StabilizedGraph) -> str:
    lines = []
    if isinstance(g, StabilizedGraph):
        lines.append(STABILIZED_HEADER)
        g = g.base
    lines.append(f"graph {g.name}")
    lines.extend(f"vertex {v}" for v in g.vertices)
    lines.extend(f"edge {e.id} {e.source} {e.range}" for e in g.edges)
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# structure


def sinks(g: Graph) -> set[str]:
    return {v for v in g.vertices if not g.out_edges(v)}


def regular_vertices(g: Graph) -> set[str]:
    # finite graphs have no infinite emitters
    return {v for v in g.vertices if g.out_edges(v)}


def sources(g: Graph) -> set[str]:
    hit = {e.range for e in g.edges}
    return {v for v in g.vertices if v not in hit}


def vertex_matrix(g: Graph) -> IntMatrix:
    n = len(g.vertices)
    idx = {v: i for i, v in enumerate(g.vertices)}
    rows = [[0] * n for _ in range(n)]
    for e in g.edges:
        rows[idx[e.source]][idx[e.range]] += 1
    return IntMatrix.from_rows(rows, n, n)


def reachable_from(g: Graph, v: str) -> set[str]:
    """Vertices reachable from ``v`` by a finite path (including ``v`` itself)."""
    seen = {v}
    stack = [v]
    while stack:
        u = stack.pop()
        for w in g.successors(u):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def simple_cycles(g: Graph) -> list[Cycle]:
    """All cycles (pairwise distinct edge sources), each listed once up to rotation.

    A cycle is rotated to start at its lexicographically least vertex-id; the
    list is sorted by (vertex sequence, edge sequence).
    """
    found = []
    for start in sorted(g.vertices):
        # only vertices > start may appear after the start vertex
        stack = [(start, (), (start,))]
        while stack:
            u, epath, vpath = stack.pop()
            for e in g.out_edges(u):
                w = e.range
                if w == start:
                    found.append((vpath, epath + (e.id,)))
                elif w > start and w not in vpath:
                    stack.append((w, epath + (e.id,), vpath + (w,)))
    found.sort()
    return [Cycle(Path(vp[0], vp[0], ep)) for vp, ep in found]


def has_cycle(g: Graph) -> bool:
    # Kahn's algorithm: a cycle exists iff some vertex is never freed
    indeg = {v: 0 for v in g.vertices}
    for e in g.edges:
        indeg[e.range] += 1
    queue = [v for v in g.vertices if indeg[v] == 0]
    seen = 0
    while queue:
        u = queue.pop()
        seen += 1
        for w in g.successors(u):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen < len(g.vertices)


def topological_order(g: Graph) -> list[str]:
    indeg = {v: 0 for v in g.vertices}
    for e in g.edges:
        indeg[e.range] += 1
    queue = [v for v in g.vertices if indeg[v] == 0]
    order = []
    while queue:
        u = queue.pop(0)
        order.append(u)
        for w in g.successors(u):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    if len(order) != len(g.vertices):
        raise ValueError(f"graph {g.name} has a cycle")
    return order


def cycle_has_exit(g: Graph, c: Cycle) -> bool:
    # each cycle vertex emits exactly one cycle edge, so any second edge exits
    return any(len(g.out_edges(v)) > 1 for v in c.vertices(g))


def condition_L(g: Graph) -> bool:
    return all(cycle_has_exit(g, c) for c in simple_cycles(g))


def is_cofinal(g: Graph) -> bool:
    """Every vertex reaches (a vertex of) every cycle.

    For finite graphs this is equivalent to the infinite-path definition: an
    infinite path repeats a vertex, so it runs through some cycle, and every
    cycle repeated forever is an infinite path.
    """
    cycles = simple_cycles(g)
    if not cycles:
        return True
    cyc_sets = [set(c.vertices(g)) for c in cycles]
    for v in g.vertices:
        reach = reachable_from(g, v)
        if any(reach.isdisjoint(s) for s in cyc_sets):
            return False
    return True


def reaches_all_sinks(g: Graph) -> bool:
    ts = sinks(g)
    return all(ts <= reachable_from(g, v) for v in g.vertices)


# ---------------------------------------------------------------------------
# constructions


def _fresh(base: str, taken: set[str]) -> str:
    name = base
    while name in taken:
        name += "_"
    taken.add(name)
    return name


def mat_n(g: Graph, n: int) -> Graph:
    """Attach a head ``v_{n-1} -> ... -> v_1 -> v`` of length n-1 at every vertex.

    Original vertices keep their positions; head vertices follow, grouped by
    base vertex and ordered v_1, v_2, ...
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("n must be a positive integer")
    if n == 1:
        return g
    taken = set(g.vertices) | {e.id for e in g.edges}
    vertices = list(g.vertices)
    edges = list(g.edges)
    for v in g.vertices:
        prev = v
        for k in range(1, n):
            vk = _fresh(f"{v}_{k}", taken)
            ek = _fresh(f"h_{v}_{k}", taken)
            vertices.append(vk)
            edges.append(Edge(ek, vk, prev))
            prev = vk
    return Graph(f"M{n}{g.name}", tuple(vertices), tuple(edges))


def stabilize(g: Graph) -> StabilizedGraph:
    return StabilizedGraph(g)


def rose(n: int, name: str | None = None) -> Graph:
    """One vertex ``v`` with loops ``e1..en``."""
    return Graph.from_edges(name or f"R{n}", ["v"], [(f"e{i}", "v", "v") for i in range(1, n + 1)])


def graph_from_matrix(rows, name: str = "G", prefix: str = "v") -> Graph:
    """Graph with vertices ``{prefix}0..`` and ``rows[i][j]`` parallel edges i -> j."""
    n = len(rows)
    vs = [f"{prefix}{i}" for i in range(n)]
    edges = []
    for i in range(n):
        for j in range(n):
            for _ in range(rows[i][j]):
                edges.append((f"e{len(edges)}", vs[i], vs[j]))
    return Graph.from_edges(name, vs, edges)
