"""Contraction, apolar annihilators and the essential subspace of a form tuple.

Conventions.  ``V`` has basis ``x0 .. xn`` and ``V*`` the dual basis
``X0 .. Xn``; vectors of either space are coefficient lists of length n + 1 and
the standard pairing <X_i, x_j> = [i == j] defines every orthogonal complement.
A covector ``l`` acts on a form by the directional derivative
``sum_j l_j * d/dx_j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import factorial, prod
from typing import Sequence

from .fields import Field, FieldError, Scalar
from .forms import Exponents, Form, FormTuple, monomials
from .linalg import Subspace, inverse, nullspace, rank


@dataclass(frozen=True)
class ApolarityProfile:
    A: Subspace
    M: Subspace
    m: int


def _check_char(phi: FormTuple) -> None:
    phi.field.require_apolarity(max(phi.multidegree))


def contract(ell: Sequence, phi: FormTuple) -> FormTuple:
    """Apply the covector ``ell`` to every component of ``phi``.

    Each component drops one degree; linear forms contract to constants.
    """
    if len(ell) != phi.n + 1:
        raise ValueError(f"covector of length {len(ell)} for n={phi.n}")
    _check_char(phi)
    field = phi.field
    ell = [field(a) for a in ell]
    out = []
    for f in phi:
        acc = Form.zero(f.n, f.degree - 1, field)
        for j, a in enumerate(ell):
            if a:
                acc = acc + f.derivative(j).scale(a)
        out.append(acc)
    return FormTuple(tuple(out))


def derivative_matrix(phi: FormTuple) -> list[list[Scalar]]:
    """Row j lists the coefficients of (d phi_1/dx_j, .., d phi_s/dx_j).

    Columns run over the monomial bases of degrees d_i - 1, concatenated.
    """
    _check_char(phi)
    rows = []
    for j in range(phi.n + 1):
        row: list[Scalar] = []
        for f in phi:
            row.extend(f.derivative(j).vector())
        rows.append(row)
    return rows


def apolar_space(phi: FormTuple) -> Subspace:
    """A(phi): the covectors killing phi under contraction."""
    D = derivative_matrix(phi)
    ncols = len(D[0])
    columns = [[D[j][c] for j in range(phi.n + 1)] for c in range(ncols)]
    return Subspace.span(nullspace(columns, phi.field, phi.n + 1), phi.field, phi.n + 1)


def essential_subspace(phi: FormTuple) -> ApolarityProfile:
    """A(phi), its annihilator M(phi) in V, and m(phi) = dim M(phi)."""
    A = apolar_space(phi)
    M = A.annihilator()
    return ApolarityProfile(A, M, M.dim)


def generalized_rank(phi: FormTuple) -> int:
    return essential_subspace(phi).m


# ------------------------------------------------------- direct membership


@lru_cache(maxsize=4096)
def _adapted_coordinates(W: Subspace) -> tuple[tuple[Scalar, ...], ...]:
    # Rows of P: basis of W followed by unit vectors completing it; x = P^{-1} b.
    P = list(W.basis) + W.complement_basis()
    return tuple(tuple(r) for r in inverse(P, W.field))


@lru_cache(maxsize=16384)
def rewrite_operator(W: Subspace, degree: int) -> dict[Exponents, Form]:
    """Each degree-``degree`` monomial written in coordinates adapted to ``W``.

    The first ``dim W`` new variables span W, the rest a complement.
    """
    Q = _adapted_coordinates(W)
    n = W.ambient_dim - 1
    return {e: Form.monomial(n, e, W.field).substitute(Q) for e in monomials(n + 1, degree)}


def rewrite(phi: FormTuple, W: Subspace) -> FormTuple:
    """phi expressed in coordinates whose first dim W variables span W."""
    field = phi.field
    out = []
    for f in phi:
        op = rewrite_operator(W, f.degree)
        acc: dict[Exponents, Scalar] = {}
        for e, c in f.terms:
            for e2, c2 in op[e].terms:
                acc[e2] = field.add(acc.get(e2, field.zero), field.mul(c, c2))
        out.append(Form.from_dict(f.n, f.degree, acc, field))
    return FormTuple(tuple(out))


@lru_cache(maxsize=16384)
def _outside_rows(W: Subspace, degree: int) -> tuple[tuple[tuple[Exponents, Scalar], ...], ...]:
    # One row per rewritten monomial that involves a complement variable:
    # the (old monomial, coefficient) pairs contributing to it.
    w = W.dim
    rows: dict[Exponents, list] = {}
    for e, image in rewrite_operator(W, degree).items():
        for e2, c in image.terms:
            if any(e2[w:]):
                rows.setdefault(e2, []).append((e, c))
    return tuple(tuple(r) for r in rows.values())


def membership(phi: FormTuple, W: Subspace) -> bool:
    """Whether phi lies in Sym^d W, decided by rewriting phi in adapted coordinates.

    phi belongs iff no rewritten monomial involves a complement variable.
    Works in every characteristic; it never looks at derivatives.
    """
    if W.ambient_dim != phi.n + 1 or W.field != phi.field:
        raise ValueError("subspace and forms live in different spaces")
    field = phi.field
    for f in phi:
        coeffs = f.coeffs
        if not coeffs:
            continue
        for row in _outside_rows(W, f.degree):
            acc = field.zero
            for e, c in row:
                a = coeffs.get(e)
                if a:
                    acc = field.add(acc, field.mul(a, c))
            if acc:
                return False
    return True


def membership_via_apolarity(phi: FormTuple, W: Subspace) -> bool:
    """The indirect test M(phi) <= W."""
    return essential_subspace(phi).M <= W


# ------------------------------------------------------------ constructors


def witness_form(params, k: int, field: Field) -> FormTuple:
    """A tuple with m = r + 1 - k exactly: phi_i = x_0^{d_i} + .. + x_{r-k}^{d_i}."""
    if not 0 <= k <= params.r:
        raise ValueError(f"k={k} outside 0..{params.r}")
    if any(d < 2 for d in params.d):
        raise ValueError("witness forms need every degree >= 2")
    field.require_apolarity(max(params.d))
    n = params.n
    forms = []
    for d in params.d:
        terms = {tuple(d if i == j else 0 for i in range(n + 1)): 1 for j in range(params.r - k + 1)}
        forms.append(Form.from_dict(n, d, terms, field))
    return FormTuple(tuple(forms))


def pairing(f: FormTuple, phi: FormTuple) -> Scalar:
    """Apolarity pairing sum_i f_i(d/dx) phi_i of Sym^d V* with Sym^d V.

    On monomials <X^a, x^b> = a! [a == b].
    """
    if f.multidegree != phi.multidegree or f.n != phi.n or f.field != phi.field:
        raise ValueError("pairing needs matching multidegree, n and field")
    field = phi.field
    total = field.zero
    for fi, pi in zip(f, phi):
        pc = pi.coeffs
        for e, c in fi.terms:
            if e in pc:
                weight = field(prod(factorial(a) for a in e))
                total = field.add(total, field.mul(weight, field.mul(c, pc[e])))
    return total


def pairing_nonzero(f: FormTuple, phi: FormTuple) -> bool:
    return pairing(f, phi) != 0


# ------------------------------------------------------- quadratic case


def quadratic_from_matrix(B: Sequence[Sequence], field: Field) -> FormTuple:
    """The quadric phi = 1/2 x^T B x, whose Hessian is B."""
    size = len(B)
    terms: dict = {}
    for i in range(size):
        for j in range(i, size):
            e = [0] * size
            e[i] += 1
            e[j] += 1
            c = field(B[i][j]) if i != j else field.div(field(B[i][i]), field(2))
            if field(B[i][j]) != field(B[j][i]):
                raise ValueError("matrix is not symmetric")
            terms[tuple(e)] = c
    return FormTuple.of(Form.from_dict(size - 1, 2, terms, field))


def hessian(phi: FormTuple) -> list[list[Scalar]]:
    """Symmetric matrix B_phi with contract(l, phi) = B_phi(l, .)."""
    if phi.multidegree != (2,):
        raise ValueError("only defined for a single quadric")
    (f,) = phi.forms
    field = f.field
    size = f.n + 1
    B = [[field.zero] * size for _ in range(size)]
    for e, c in f.terms:
        idx = [i for i, a in enumerate(e) for _ in range(a)]
        i, j = idx
        if i == j:
            B[i][i] = field.mul(2, c)
        else:
            B[i][j] = B[j][i] = c
    return B


def quadratic_rank(phi: FormTuple) -> int:
    if phi.field.is_prime_field and phi.field.p == 2:
        raise FieldError("Hessian rank is not the quadric rank in characteristic 2")
    return rank(hessian(phi), phi.field)
