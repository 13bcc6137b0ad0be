"""Exact arithmetic in Leavitt path algebras over the Gaussian rationals.

Elements are finite combinations of monomials ``alpha beta*`` kept in normal
form for a fixed choice of one *special* edge per regular vertex: the relation
``v = sum_{s(e)=v} e e*`` is oriented to eliminate every monomial whose two
paths both end in the special edge of the same vertex,

    alpha g (beta g)*  ->  alpha beta*  -  sum_{e != g, s(e)=v} (alpha e)(beta e)*

Each monomial has at most one redex and each step strictly shortens the
monomial or replaces it by irreducible ones, so the system terminates and the
irreducible monomials are a basis.
"""

from __future__ import annotations

import random
import re
from fractions import Fraction
from typing import Iterator, Mapping, NamedTuple, Optional

from .graph import Graph, Path, has_cycle, topological_order


class Scalar:
    """Gaussian rational ``re + im*i``."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @classmethod
    def of(cls, x) -> "Scalar":
        if isinstance(x, Scalar):
            return x
        if isinstance(x, complex):
            raise TypeError("floating complex numbers are not exact")
        return cls(x)

    def __add__(self, o):
        o = Scalar.of(o)
        return Scalar(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, o):
        o = Scalar.of(o)
        return Scalar(self.re - o.re, self.im - o.im)

    def __rsub__(self, o):
        return Scalar.of(o) - self

    def __mul__(self, o):
        o = Scalar.of(o)
        return Scalar(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __neg__(self):
        return Scalar(-self.re, -self.im)

    def conjugate(self) -> "Scalar":
        return Scalar(self.re, -self.im)

    def inverse(self) -> "Scalar":
        n = self.re * self.re + self.im * self.im
        if n == 0:
            raise ZeroDivisionError("zero has no inverse")
        return Scalar(self.re / n, -self.im / n)

    def __truediv__(self, o):
        return self * Scalar.of(o).inverse()

    def __pow__(self, k: int):
        base = self if k >= 0 else self.inverse()
        out = Scalar(1)
        for _ in range(abs(k)):
            out = out * base
        return out

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, o):
        try:
            o = Scalar.of(o)
        except (TypeError, ValueError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"Scalar({self})"

    def __str__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "-" if self.im < 0 else "+"
        return f"({self.re}{sign}{abs(self.im)}i)"


class Monomial(NamedTuple):
    """``alpha beta*``; both paths end at the same vertex."""

    alpha: Path
    beta: Path

    @property
    def degree(self) -> int:
        return len(self.alpha) - len(self.beta)


def _is_prefix(p: Path, q: Path) -> bool:
    return p.source == q.source and q.edges[: len(p.edges)] == p.edges


class LeavittAlgebra:
    """L_K(E) for a finite graph and a choice of special edges (K = Gaussian rationals)."""

    def __init__(self, graph: Graph, special_edges: Optional[Mapping[str, str]] = None):
        self.graph = graph
        self._edges = {e.id: e for e in graph.edges}
        special = {}
        given = dict(special_edges or {})
        for v, eid in given.items():
            if v not in graph.vertices:
                raise ValueError(f"unknown vertex {v!r} in special-edge choice")
            if eid not in self._edges or self._edges[eid].source != v:
                raise ValueError(f"special edge {eid!r} is not emitted by {v!r}")
        for v in graph.vertices:
            out = graph.out_edges(v)
            if out:
                special[v] = given.get(v, min(e.id for e in out))
        self.special = special
        self._nf_cache: dict[Monomial, dict[Monomial, Scalar]] = {}

    # --- paths ---------------------------------------------------------

    def path(self, *edges: str) -> Path:
        return Path.of_edges(self.graph, edges)

    def _concat(self, p: Path, q: Path) -> Path:
        if not q.edges:
            return p
        return Path(p.source, q.range, p.edges + q.edges)

    def _drop_last(self, p: Path) -> Path:
        e = self._edges[p.edges[-1]]
        if len(p.edges) == 1:
            return Path.vertex(e.source)
        return Path(p.source, e.source, p.edges[:-1])

    def _extend(self, p: Path, eid: str) -> Path:
        e = self._edges[eid]
        return Path(p.source, e.range, p.edges + (eid,))

    # --- generators ----------------------------------------------------

    def element(self, terms: Mapping[Monomial, object]) -> "Element":
        return self.normal_form(terms)

    def zero(self) -> "Element":
        return Element(self, {})

    def vertex(self, v: str) -> "Element":
        if v not in self.graph.vertices:
            raise KeyError(v)
        p = Path.vertex(v)
        return Element(self, {Monomial(p, p): Scalar(1)})

    def edge(self, eid: str) -> "Element":
        e = self._edges[eid]
        return Element(self, {Monomial(Path(e.source, e.range, (eid,)), Path.vertex(e.range)): Scalar(1)})

    def ghost(self, eid: str) -> "Element":
        return self.edge(eid).star()

    def one(self) -> "Element":
        out = self.zero()
        for v in self.graph.vertices:
            out = out + self.vertex(v)
        return out

    def scalar(self, c) -> "Element":
        return self.one() * Scalar.of(c)

    def monomial(self, alpha: Path, beta: Path, coeff=1) -> "Element":
        if alpha.range != beta.range:
            raise ValueError("alpha and beta must end at the same vertex")
        return self.normal_form({Monomial(alpha, beta): coeff})

    # --- rewriting -----------------------------------------------------

    def is_reducible(self, m: Monomial) -> bool:
        a, b = m.alpha.edges, m.beta.edges
        if not a or not b or a[-1] != b[-1]:
            return False
        e = self._edges[a[-1]]
        return self.special[e.source] == e.id

    def rewrite(self, m: Monomial) -> list[tuple[Monomial, int]]:
        """One rewrite step on a reducible monomial."""
        g = self._edges[m.alpha.edges[-1]]
        a, b = self._drop_last(m.alpha), self._drop_last(m.beta)
        out = [(Monomial(a, b), 1)]
        for e in self.graph.out_edges(g.source):
            if e.id != g.id:
                out.append((Monomial(self._extend(a, e.id), self._extend(b, e.id)), -1))
        return out

    def normal_form(self, raw: Mapping[Monomial, object], rng: Optional[random.Random] = None) -> "Element":
        """Reduce a raw term map to normal form.

        With ``rng`` the pending terms are processed in random order and the
        per-monomial cache is bypassed; the result must not depend on it.
        """
        result: dict[Monomial, Scalar] = {}
        if rng is None:
            for m, c in raw.items():
                c = Scalar.of(c)
                if not c:
                    continue
                for mm, cc in self._reduce_monomial(m).items():
                    result[mm] = result.get(mm, Scalar(0)) + c * cc
        else:
            work = [(m, Scalar.of(c)) for m, c in raw.items()]
            while work:
                i = rng.randrange(len(work))
                work[i], work[-1] = work[-1], work[i]
                m, c = work.pop()
                if not c:
                    continue
                if self.is_reducible(m):
                    work.extend((mm, c * k) for mm, k in self.rewrite(m))
                else:
                    result[m] = result.get(m, Scalar(0)) + c
        return Element(self, {m: c for m, c in result.items() if c})

    def _reduce_monomial(self, m: Monomial) -> dict[Monomial, Scalar]:
        cached = self._nf_cache.get(m)
        if cached is not None:
            return cached
        if not self.is_reducible(m):
            out = {m: Scalar(1)}
        else:
            out: dict[Monomial, Scalar] = {}
            for mm, k in self.rewrite(m):
                for m3, c3 in self._reduce_monomial(mm).items():
                    out[m3] = out.get(m3, Scalar(0)) + c3 * k
            out = {x: c for x, c in out.items() if c}
        self._nf_cache[m] = out
        return out

    def multiply_monomials(self, x: Monomial, y: Monomial) -> Optional[Monomial]:
        """``(a b*)(c d*)`` before normalization, or None when it vanishes."""
        a, b = x
        c, d = y
        if _is_prefix(b, c):
            rest = Path(b.range, c.range, c.edges[len(b.edges):])
            return Monomial(self._concat(a, rest), d)
        if _is_prefix(c, b):
            rest = Path(c.range, b.range, b.edges[len(c.edges):])
            return Monomial(a, self._concat(d, rest))
        return None

    # --- finite-dimensional case --------------------------------------

    def paths_ending_at(self) -> dict[str, list[Path]]:
        if has_cycle(self.graph):
            raise ValueError(f"graph {self.graph.name} has a cycle")
        ending = {v: [Path.vertex(v)] for v in self.graph.vertices}
        for u in topological_order(self.graph):
            for e in self.graph.out_edges(u):
                ending[e.range].extend(
                    Path(p.source, e.range, p.edges + (e.id,)) for p in ending[u]
                )
        return ending

    def basis_monomials(self) -> Iterator[Monomial]:
        for v, ps in self.paths_ending_at().items():
            for a in ps:
                for b in ps:
                    m = Monomial(a, b)
                    if not self.is_reducible(m):
                        yield m

    # --- text ----------------------------------------------------------

    def parse(self, text: str) -> "Element":
        return _ExprParser(self, text).parse()


class Element:
    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: LeavittAlgebra, terms: Mapping[Monomial, Scalar]):
        self.algebra = algebra
        self.terms = dict(terms)

    def _check(self, other: "Element"):
        if other.algebra is not self.algebra:
            raise ValueError("operands belong to different algebras")

    def __add__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, Scalar(0)) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Element(self.algebra, out)

    def __neg__(self):
        return Element(self.algebra, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Element):
            c = Scalar.of(other)
            if not c:
                return self.algebra.zero()
            return Element(self.algebra, {m: k * c for m, k in self.terms.items()})
        self._check(other)
        raw: dict[Monomial, Scalar] = {}
        mul = self.algebra.multiply_monomials
        for x, cx in self.terms.items():
            for y, cy in other.terms.items():
                m = mul(x, y)
                if m is not None:
                    raw[m] = raw.get(m, Scalar(0)) + cx * cy
        return self.algebra.normal_form(raw)

    def __rmul__(self, c):
        return self * c

    def star(self) -> "Element":
        raw = {Monomial(m.beta, m.alpha): c.conjugate() for m, c in self.terms.items()}
        return self.algebra.normal_form(raw)

    def grade_components(self) -> dict[int, "Element"]:
        comps: dict[int, dict] = {}
        for m, c in self.terms.items():
            comps.setdefault(m.degree, {})[m] = c
        return {d: Element(self.algebra, t) for d, t in sorted(comps.items())}

    def scaled(self, a) -> "Element":
        return scaling_action(a, self)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.algebra is other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __repr__(self):
        return f"Element({self})"

    def __str__(self):
        return format_element(self)


def multiply(x: Element, y: Element) -> Element:
    return x * y


def star(x: Element) -> Element:
    return x.star()


def grade_components(x: Element) -> dict[int, Element]:
    return x.grade_components()


def scaling_action(a, x: Element) -> Element:
    """The automorphism fixing vertices with e -> a e and e* -> a^-1 e*."""
    a = Scalar.of(a)
    if not a:
        raise ValueError("scaling action needs a nonzero scalar")
    return Element(x.algebra, {m: c * a ** m.degree for m, c in x.terms.items()})


def dimension(g: Graph, special_edges: Optional[Mapping[str, str]] = None) -> int:
    """Number of irreducible monomials; finite exactly when g is acyclic."""
    return sum(1 for _ in LeavittAlgebra(g, special_edges).basis_monomials())


# ---------------------------------------------------------------------------
# text form


def _term_key(m: Monomial):
    return (len(m.alpha) + len(m.beta), m.alpha.edges, m.beta.edges, m.alpha.source, m.beta.source)


def format_monomial(m: Monomial) -> str:
    if not m.alpha.edges and not m.beta.edges:
        return m.alpha.source
    factors = list(m.alpha.edges) + [f"{e}'" for e in reversed(m.beta.edges)]
    return ".".join(factors)


def format_element(x: Element) -> str:
    if not x.terms:
        return "0"
    parts = []
    for m in sorted(x.terms, key=_term_key):
        c = x.terms[m]
        body = format_monomial(m)
        negative = (not c.im and c.re < 0) or (not c.re and c.im < 0)
        mag = -c if negative else c
        text = body if mag == 1 else f"{mag} {body}"
        if not parts:
            parts.append(f"-{text}" if negative else text)
        else:
            parts.append(f"- {text}" if negative else f"+ {text}")
    return " ".join(parts)


class ExpressionError(ValueError):
    def __init__(self, message: str, pos: int):
        self.pos = pos
        super().__init__(f"column {pos + 1}: {message}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)(?P<imag>i(?![A-Za-z0-9_]))?|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[.+\-()']))"
)


class _ExprParser:
    """Recursive-descent parser for element expressions.

    expr   := ['-'] term (('+' | '-') term)*
    term   := scalar [factor ('.' factor)*] | factor ('.' factor)*
    factor := IDENT | IDENT "'" | 'adj' '(' expr ')'
    scalar := RATIONAL | RATIONAL 'i' | '(' ['-'] RATIONAL ('+'|'-') RATIONAL 'i' ')'
    """

    def __init__(self, algebra: LeavittAlgebra, text: str):
        self.A = algebra
        self.text = text
        self.toks = self._lex(text)
        self.i = 0

    def _lex(self, text):
        toks, pos = [], 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            m = _TOKEN_RE.match(text, pos)
            if not m:
                raise ExpressionError(f"unexpected character {text[pos:].lstrip()[0]!r}", pos)
            start = pos + len(m.group(0)) - len(m.group(0).lstrip())
            if m.group("num") is not None:
                kind = "imag" if m.group("imag") else "num"
                toks.append((kind, Fraction(m.group("num")), start))
            elif m.group("ident") is not None:
                toks.append(("ident", m.group("ident"), start))
            else:
                toks.append((m.group("op"), m.group("op"), start))
            pos = m.end()
        toks.append(("eof", None, len(text)))
        return toks

    def peek(self, k=0):
        return self.toks[self.i + k]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            raise ExpressionError(f"expected {kind!r}, found {tok[1]!r}", tok[2])
        self.i += 1
        return tok

    def parse(self) -> Element:
        x = self.expr()
        tok = self.peek()
        if tok[0] != "eof":
            raise ExpressionError(f"unexpected {tok[1]!r}", tok[2])
        return x

    def expr(self) -> Element:
        sign = 1
        if self.peek()[0] == "-":
            self.take()
            sign = -1
        out = self.term() * sign
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            out = out + t if op == "+" else out - t
        return out

    def _starts_scalar(self):
        kind = self.peek()[0]
        return kind in ("num", "imag", "(")

    def scalar(self) -> Scalar:
        tok = self.take()
        if tok[0] == "num":
            return Scalar(tok[1])
        if tok[0] == "imag":
            return Scalar(0, tok[1])
        # '(' ['-'] RATIONAL ('+'|'-') RATIONAL 'i' ')'
        neg = False
        if self.peek()[0] == "-":
            self.take()
            neg = True
        re_part = self.take("num")[1]
        op = self.take()
        if op[0] not in ("+", "-"):
            raise ExpressionError("expected '+' or '-' in complex scalar", op[2])
        im_part = self.take("imag")[1]
        self.take(")")
        return Scalar(-re_part if neg else re_part, im_part if op[0] == "+" else -im_part)

    def term(self) -> Element:
        coeff = Scalar(1)
        if self._starts_scalar():
            coeff = self.scalar()
            if self.peek()[0] != "ident":
                return self.A.scalar(coeff)
        x = self.factor()
        while self.peek()[0] == ".":
            self.take()
            x = x * self.factor()
        return x * coeff

    def factor(self) -> Element:
        kind, name, pos = self.take("ident")
        if name == "adj" and self.peek()[0] == "(":
            self.take("(")
            inner = self.expr()
            self.take(")")
            return inner.star()
        ghost = False
        if self.peek()[0] == "'":
            self.take()
            ghost = True
        g = self.A.graph
        is_vertex = name in g.vertices
        is_edge = name in self.A._edges
        if is_vertex and is_edge:
            raise ExpressionError(f"{name!r} names both a vertex and an edge", pos)
        if is_edge:
            return self.A.ghost(name) if ghost else self.A.edge(name)
        if is_vertex:
            if ghost:
                raise ExpressionError(f"prime applies to edges only, not vertex {name!r}", pos)
            return self.A.vertex(name)
        raise ExpressionError(f"unknown identifier {name!r}", pos)
