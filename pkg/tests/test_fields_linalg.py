from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.polys.domains import GF as SGF
from sympy.polys.matrices import DomainMatrix

from fanostrata.fields import GF, QQ, Field, FieldError
from fanostrata.linalg import Subspace, inverse, matmul, nullspace, rank, rref


def test_field_validation():
    with pytest.raises(FieldError):
        GF(9)
    with pytest.raises(FieldError):
        Field("exact-rationals", 3)
    assert GF(7)(Fraction(1, 2)) == 4
    assert GF(7)("-1") == 6
    assert QQ("3/6") == Fraction(1, 2)
    with pytest.raises(FieldError):
        GF(7)(Fraction(1, 7))


def test_to_json_is_exact():
    assert QQ.to_json(Fraction(3, 4)) == "3/4"
    assert QQ.to_json(Fraction(4, 2)) == 2
    assert GF(5).to_json(3) == 3


def test_apolarity_characteristic_guard():
    GF(5).require_apolarity(4)
    QQ.require_apolarity(100)
    with pytest.raises(FieldError):
        GF(3).require_apolarity(3)


small_int = st.integers(-3, 3)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_and_nullspace_match_sympy_over_QQ(rows, cols, data):
    A = [[data.draw(small_int) for _ in range(cols)] for _ in range(rows)]
    Aq = [[QQ(a) for a in row] for row in A]
    assert rank(Aq, QQ) == sympy.Matrix(A).rank()
    ns = nullspace(Aq, QQ, cols)
    assert len(ns) == cols - sympy.Matrix(A).rank()
    for v in ns:
        assert all(sum(a * b for a, b in zip(row, v)) == 0 for row in Aq)
    assert Subspace.span(ns, QQ, cols) == Subspace.span(
        [list(v) for v in sympy.Matrix(A).nullspace()], QQ, cols
    )


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 4), st.integers(1, 5), st.data())
def test_rank_matches_sympy_over_GFp(p, rows, cols, data):
    A = [[data.draw(st.integers(0, p - 1)) for _ in range(cols)] for _ in range(rows)]
    dm = DomainMatrix([[SGF(p)(a) for a in row] for row in A], (rows, cols), SGF(p))
    assert rank(A, GF(p)) == dm.rank()


def test_rref_canonical_pivots():
    red, piv = rref([[0, 2, 4], [1, 1, 1], [1, 2, 3]], QQ)
    assert piv == [0, 1]
    assert red == [[1, 0, -1], [0, 1, 2]]


def test_inverse_roundtrip():
    g = [[QQ(a) for a in row] for row in [[2, 1, 0], [1, 1, 0], [0, 3, 1]]]
    gi = inverse(g, QQ)
    assert matmul(g, gi, QQ) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    with pytest.raises(ValueError):
        inverse([[1, 2], [2, 4]], QQ)


def test_subspace_equality_is_set_equality():
    a = Subspace.span([[1, 1, 0], [0, 1, 1]], GF(5), 3)
    b = Subspace.span([[1, 2, 1], [2, 2, 0], [1, 0, 4]], GF(5), 3)
    assert a == b and hash(a) == hash(b)
    assert a.basis == b.basis


def test_subspace_operations():
    V = Subspace.whole(3, QQ)
    L = Subspace.span([[1, 1, 0]], QQ, 3)
    P = Subspace.span([[1, 0, 0], [0, 1, 0]], QQ, 3)
    assert L <= P and L < P and not P <= L
    assert L.annihilator() == Subspace.span([[1, -1, 0], [0, 0, 1]], QQ, 3)
    assert (P & Subspace.span([[0, 1, 0], [0, 0, 1]], QQ, 3)) == Subspace.span([[0, 1, 0]], QQ, 3)
    assert (L + Subspace.span([[0, 0, 1]], QQ, 3)).dim == 2
    assert V.annihilator() == Subspace.zero(3, QQ)
    assert Subspace.zero(3, QQ).annihilator() == V
    assert P.contains([3, -2, 0]) and not P.contains([0, 0, 1])


@settings(max_examples=50, deadline=None)
@given(st.lists(st.lists(st.integers(0, 4), min_size=4, max_size=4), max_size=4))
def test_double_annihilator(vectors):
    W = Subspace.span(vectors, GF(5), 4)
    assert W.annihilator().annihilator() == W
    assert W.dim + W.annihilator().dim == 4
    assert Subspace.span(list(W.basis) + W.complement_basis(), GF(5), 4).dim == 4
