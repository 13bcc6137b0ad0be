import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from leavitt.elements import (
    ExpressionError,
    LeavittAlgebra,
    Monomial,
    Scalar,
    dimension,
    grade_components,
    multiply,
    scaling_action,
    star,
)
from leavitt.graph import Path, has_cycle, parse_graph, rose, topological_order

import oracles


def random_path_into(g, v, length, rng):
    """Walk backwards from v along in-edges; returns a Path ending at v."""
    edges = []
    cur = v
    for _ in range(length):
        ins = [e for e in g.edges if e.range == cur]
        if not ins:
            break
        e = rng.choice(ins)
        edges.append(e.id)
        cur = e.source
    edges.reverse()
    return Path(cur, v, tuple(edges))


def random_scalar(rng):
    return Scalar(Fraction(rng.randint(-3, 3), rng.randint(1, 2)), rng.choice([0, 0, 1, -1]))


def random_element(A, rng, terms=3, max_len=2):
    g = A.graph
    raw = {}
    for _ in range(rng.randint(1, terms)):
        v = rng.choice(g.vertices)
        m = Monomial(random_path_into(g, v, rng.randint(0, max_len), rng),
                     random_path_into(g, v, rng.randint(0, max_len), rng))
        raw[m] = random_scalar(rng)
    return A.element(raw)


# --- scalars -------------------------------------------------------------------


def test_scalar_arithmetic():
    a = Scalar(1, 2)
    assert a * a.inverse() == Scalar(1)
    assert a.conjugate() == Scalar(1, -2)
    assert a ** -2 == (a * a).inverse()
    assert str(Scalar(Fraction(1, 2))) == "1/2"
    assert str(Scalar(0, 3)) == "3i"
    assert str(Scalar(1, 2)) == "(1+2i)"
    with pytest.raises(ZeroDivisionError):
        Scalar(0).inverse()


@given(st.fractions(max_denominator=9), st.fractions(max_denominator=9),
       st.fractions(max_denominator=9), st.fractions(max_denominator=9))
def test_scalar_field_axioms(a, b, c, d):
    x, y = Scalar(a, b), Scalar(c, d)
    assert x * y == y * x
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()
    assert x - x == Scalar(0)
    if y:
        assert (x / y) * y == x


# --- examples ------------------------------------------------------------------


def test_multiply_examples(arrow, r2):
    A = LeavittAlgebra(arrow)
    assert A.ghost("e") * A.edge("e") == A.vertex("w")
    assert A.edge("e") * A.ghost("e") == A.vertex("v")
    B = LeavittAlgebra(r2)
    assert (B.ghost("e1") * B.edge("e2")).is_zero()


def test_star_examples(r2):
    A = LeavittAlgebra(r2)
    e = A.edge("e1")
    assert star(e) == A.ghost("e1")
    assert star(star(e)) == e
    m = A.monomial(A.path("e1"), A.path("e2"), Scalar(2, 1))
    assert star(m) == A.monomial(A.path("e2"), A.path("e1"), Scalar(2, -1))


def test_normal_form_examples(arrow, r2):
    A = LeavittAlgebra(arrow)
    assert A.monomial(A.path("e"), A.path("e")) == A.vertex("v")
    B = LeavittAlgebra(r2)
    assert B.monomial(B.path("e1"), B.path("e1")) == B.vertex("v") - B.monomial(B.path("e2"), B.path("e2"))
    m = Monomial(B.path("e2"), B.path("e1"))
    assert not B.is_reducible(m)
    assert B.element({m: 1}).terms == {m: Scalar(1)}


def test_grading_examples(line3):
    A = LeavittAlgebra(line3)
    assert grade_components(A.vertex("v")) == {0: A.vertex("v")}
    x = A.edge("e") + A.ghost("e")
    assert grade_components(x) == {-1: A.ghost("e"), 1: A.edge("e")}
    assert list(grade_components(A.edge("e") * A.edge("f"))) == [2]


def test_scaling_examples(r2):
    A = LeavittAlgebra(r2)
    v = A.vertex("v")
    ee = A.edge("e2") * A.ghost("e2")
    assert scaling_action(5, v) == v
    assert scaling_action(2, ee) == ee
    assert scaling_action(2, A.edge("e1")) == A.edge("e1") * 2
    assert scaling_action(2, A.ghost("e1")) == A.ghost("e1") * Fraction(1, 2)
    with pytest.raises(ValueError):
        scaling_action(0, v)


def test_dimension_examples(arrow):
    assert dimension(parse_graph("graph E\nvertex v\n")) == 1
    assert dimension(arrow) == 4
    assert dimension(parse_graph("graph E\nvertex u\nvertex v\nvertex w\nedge a u w\nedge b v w\n")) == 9
    with pytest.raises(ValueError):
        dimension(rose(2))


def test_dimension_independent_of_special_edges():
    g = parse_graph("graph E\nvertex u\nvertex v\nvertex w\nedge a u v\nedge b u w\nedge c v w\nedge d v w\n")
    base = dimension(g)
    for su in ("a", "b"):
        for sv in ("c", "d"):
            assert dimension(g, {"u": su, "v": sv}) == base


def test_bad_special_edges(r2):
    with pytest.raises(ValueError):
        LeavittAlgebra(r2, {"v": "nope"})
    with pytest.raises(ValueError):
        LeavittAlgebra(r2, {"w": "e1"})


def test_mixed_algebras(r2):
    A, B = LeavittAlgebra(r2), LeavittAlgebra(r2)
    with pytest.raises(ValueError):
        A.vertex("v") * B.vertex("v")


# --- relations and laws on random graphs ------------------------------------------


def check_relations(g):
    A = LeavittAlgebra(g)
    V = {v: A.vertex(v) for v in g.vertices}
    for v in g.vertices:
        for w in g.vertices:
            assert V[v] * V[w] == (V[v] if v == w else A.zero())
    for e in g.edges:
        E, Es = A.edge(e.id), A.ghost(e.id)
        assert V[e.source] * E == E == E * V[e.range]
        assert V[e.range] * Es == Es == Es * V[e.source]
        for f in g.edges:
            assert Es * A.edge(f.id) == (V[e.range] if e.id == f.id else A.zero())
    for v in g.vertices:
        out = g.out_edges(v)
        if out:
            total = A.zero()
            for e in out:
                total = total + A.edge(e.id) * A.ghost(e.id)
            assert total == V[v]


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_relations_random_graphs(seed):
    check_relations(oracles.random_graph(random.Random(seed)))


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_algebra_laws(seed):
    rng = random.Random(seed)
    A = LeavittAlgebra(oracles.random_graph(rng))
    x, y, z = (random_element(A, rng) for _ in range(3))
    assert (x * y) * z == x * (y * z)
    assert star(x * y) == star(y) * star(x)
    assert star(x + y) == star(x) + star(y)
    assert star(star(x)) == x
    assert x * (y + z) == x * y + x * z
    c = Scalar(1, 1)
    assert star(x * c) == star(x) * c.conjugate()


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_grading_is_additive(seed):
    rng = random.Random(seed)
    A = LeavittAlgebra(oracles.random_graph(rng))
    x, y = random_element(A, rng), random_element(A, rng)
    gx, gy, gxy = grade_components(x), grade_components(y), grade_components(x * y)
    degrees = {a + b for a in gx for b in gy} | set(gxy)
    for d in degrees:
        expect = A.zero()
        for a, xa in gx.items():
            if d - a in gy:
                expect = expect + xa * gy[d - a]
        assert gxy.get(d, A.zero()) == expect


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_scaling_is_graded_automorphism(seed):
    rng = random.Random(seed)
    A = LeavittAlgebra(oracles.random_graph(rng))
    x, y = random_element(A, rng), random_element(A, rng)
    a = Scalar(rng.randint(1, 4), rng.randint(-2, 2))
    assert scaling_action(a, x * y) == scaling_action(a, x) * scaling_action(a, y)
    assert scaling_action(a.inverse(), scaling_action(a, x)) == x
    for d, xd in grade_components(x).items():
        assert scaling_action(a, xd) == xd * a ** d


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_confluence(seed):
    rng = random.Random(seed)
    A = LeavittAlgebra(oracles.random_graph(rng))
    x, y = random_element(A, rng), random_element(A, rng)
    raw = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            m = A.multiply_monomials(mx, my)
            if m is not None:
                raw[m] = raw.get(m, Scalar(0)) + cx * cy
    ref = A.normal_form(raw)
    for k in range(5):
        assert A.normal_form(raw, rng=random.Random(k)) == ref


def test_normal_forms_are_irreducible(census):
    rng = random.Random(3)
    for g in census.graphs[:10]:
        A = LeavittAlgebra(g)
        x = random_element(A, rng) * random_element(A, rng)
        assert not any(A.is_reducible(m) for m in x.terms)


# --- faithful matrix picture of the acyclic case -------------------------------------


class MatrixPicture:
    """alpha beta* -> E_{alpha, beta} inside the block of the common sink."""

    def __init__(self, g):
        assert not has_cycle(g)
        self.g = g
        ending = {v: [(v, ())] for v in g.vertices}
        for u in topological_order(g):
            for e in g.out_edges(u):
                ending[e.range] += [(s, p + (e.id,)) for s, p in ending[u]]
        ts = [v for v in g.vertices if not g.out_edges(v)]
        # every path extends to one ending at a sink; index rows by (sink, path)
        self.paths = [(t, p) for t in ts for p in ending[t]]

    def vertex(self, v):
        return {((t, p), (t, p)): 1 for t, p in self.paths if p[0] == v}

    def edge(self, eid):
        e = self.g.edge(eid)
        out = {}
        for t, (s, es) in self.paths:
            if s == e.range:
                out[((t, (e.source, (eid,) + es)), (t, (s, es)))] = 1
        return out

    @staticmethod
    def mul(x, y):
        out = {}
        for (i, j), a in x.items():
            for (k, l), b in y.items():
                if j == k:
                    out[i, l] = out.get((i, l), 0) + a * b
        return {k: v for k, v in out.items() if v}

    @staticmethod
    def adjoint(x):
        return {(j, i): v.conjugate() for (i, j), v in x.items()}

    def of(self, elem):
        total = {}
        for m, c in elem.terms.items():
            r = self.vertex(m.alpha.source)
            for eid in m.alpha.edges:
                r = self.mul(r, self.edge(eid))
            b = self.vertex(m.beta.source)
            for eid in m.beta.edges:
                b = self.mul(b, self.edge(eid))
            r = self.mul(r, self.adjoint(b))
            z = complex(float(c.re), float(c.im))
            for k, v in r.items():
                total[k] = total.get(k, 0) + z * v
        return {k: v for k, v in total.items() if v}


@settings(max_examples=30)
@given(st.integers(0, 2**32 - 1))
def test_matrix_picture_is_a_star_homomorphism(seed):
    rng = random.Random(seed)
    g = oracles.random_dag(rng, max_vertices=4, max_edges=5)
    A = LeavittAlgebra(g)
    P = MatrixPicture(g)

    def intify(x):
        return A.element({m: Scalar(int(c.re * 2), int(c.im)) for m, c in x.terms.items()})

    x, y = intify(random_element(A, rng)), intify(random_element(A, rng))
    assert P.of(x * y) == P.mul(P.of(x), P.of(y))
    assert P.of(star(x)) == P.adjoint(P.of(x))
    # the basis is mapped injectively (distinct nonzero images of equal count)
    images = {frozenset(P.of(A.element({m: 1})).items()) for m in A.basis_monomials()}
    blocks = [sum(1 for t, _ in P.paths if t == s) for s in {t for t, _ in P.paths}]
    assert len(images) == dimension(g) == sum(n * n for n in blocks)


# --- expression grammar and formatting ---------------------------------------------------


def test_parse_and_format(arrow, r3):
    A = LeavittAlgebra(arrow)
    assert str(A.parse("e . e'")) == "v"
    B = LeavittAlgebra(r3)
    assert str(B.parse("e1 . e1'")) == "v - e2.e2' - e3.e3'"
    assert str(B.parse("e1' . e2")) == "0"
    assert str(B.parse("2 e1 + 1/2 e2")) == "2 e1 + 1/2 e2"
    assert str(B.parse("3i e1 + (1-2i) e2'")) == "(1-2i) e2' + 3i e1"
    assert str(B.parse("adj(3i e1.e2)")) == "-3i e2'.e1'"


def test_parse_round_trip(r3):
    B = LeavittAlgebra(r3)
    rng = random.Random(5)
    for _ in range(50):
        x = random_element(B, rng)
        assert B.parse(str(x)) == x


@pytest.mark.parametrize("text", ["v'", "e1 +", "q", "adj(e1", "(1+2) e1", "e1 .", ""])
def test_parse_errors(r3, text):
    with pytest.raises(ExpressionError):
        LeavittAlgebra(r3).parse(text)


def test_multiply_function(r2):
    A = LeavittAlgebra(r2)
    assert multiply(A.edge("e1"), A.ghost("e1")) == A.edge("e1") * A.ghost("e1")
