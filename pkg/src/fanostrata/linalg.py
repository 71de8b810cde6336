"""Exact Gaussian elimination and canonical subspaces.

Matrices are lists of rows.  All entries are already canonical elements of the
given :class:`~fanostrata.fields.Field`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .fields import Field, Scalar

Row = tuple
Matrix = Sequence[Sequence[Scalar]]


def rref(rows: Matrix, field: Field, ncols: int | None = None) -> tuple[list[list[Scalar]], list[int]]:
    """Reduced row-echelon form; returns the nonzero rows and their pivot columns."""
    m = [list(r) for r in rows]
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots: list[int] = []
    top = 0
    for col in range(ncols):
        if top == len(m):
            break
        piv = next((i for i in range(top, len(m)) if m[i][col] != 0), None)
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        inv = field.inv(m[top][col])
        m[top] = [field.mul(inv, a) for a in m[top]]
        prow = m[top]
        for i in range(len(m)):
            if i != top and m[i][col] != 0:
                c = m[i][col]
                m[i] = [field.sub(a, field.mul(c, b)) for a, b in zip(m[i], prow)]
        pivots.append(col)
        top += 1
    return m[:top], pivots


def rank(rows: Matrix, field: Field) -> int:
    return len(rref(rows, field)[1])


def nullspace(rows: Matrix, field: Field, ncols: int) -> list[list[Scalar]]:
    """Basis of {v : A v = 0}, one vector per free column."""
    red, pivots = rref(rows, field, ncols)
    basis = []
    pivot_set = set(pivots)
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [field.zero] * ncols
        v[free] = field.one
        for row, pc in zip(red, pivots):
            v[pc] = field.neg(row[free])
        basis.append(v)
    return basis


def transpose(rows: Matrix, ncols: int) -> list[list[Scalar]]:
    return [[r[j] for r in rows] for j in range(ncols)]


def matmul(a: Matrix, b: Matrix, field: Field) -> list[list[Scalar]]:
    cols = list(zip(*b))
    out = []
    for row in a:
        out_row = []
        for col in cols:
            acc = field.zero
            for x, y in zip(row, col):
                if x and y:
                    acc = field.add(acc, field.mul(x, y))
            out_row.append(acc)
        out.append(out_row)
    return out


def inverse(a: Matrix, field: Field) -> list[list[Scalar]]:
    n = len(a)
    aug = [list(row) + [field.one if i == j else field.zero for j in range(n)] for i, row in enumerate(a)]
    red, pivots = rref(aug, field, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ValueError("matrix is singular")
    return [row[n:] for row in red]


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of F^N, stored by its unique RREF basis.

    Two instances describe the same subspace exactly when they compare equal,
    so subspaces can be hashed, deduplicated and used as cache keys.
    """

    ambient_dim: int
    basis: tuple[Row, ...]
    field: Field

    @classmethod
    def span(cls, vectors: Iterable[Sequence], field: Field, ambient_dim: int) -> "Subspace":
        vecs = [[field(a) for a in v] for v in vectors]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
        red, _ = rref(vecs, field, ambient_dim)
        return cls(ambient_dim, tuple(tuple(r) for r in red), field)

    @classmethod
    def zero(cls, ambient_dim: int, field: Field) -> "Subspace":
        return cls(ambient_dim, (), field)

    @classmethod
    def whole(cls, ambient_dim: int, field: Field) -> "Subspace":
        return cls.span(
            [[1 if i == j else 0 for j in range(ambient_dim)] for i in range(ambient_dim)],
            field,
            ambient_dim,
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j, a in enumerate(row) if a != 0) for row in self.basis)

    def contains(self, vector: Sequence) -> bool:
        v = [self.field(a) for a in vector]
        # RREF basis: the candidate coefficients are read off the pivot columns.
        for row, pc in zip(self.basis, self.pivots):
            c = v[pc]
            if c:
                v = [self.field.sub(a, self.field.mul(c, b)) for a, b in zip(v, row)]
        return not any(v)

    def __le__(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(other.contains(row) for row in self.basis)

    def __lt__(self, other: "Subspace") -> bool:
        return self <= other and self.dim < other.dim

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.span(self.basis + other.basis, self.field, self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return (self.annihilator() + other.annihilator()).annihilator()

    def annihilator(self) -> "Subspace":
        """Orthogonal complement under the standard pairing sum_i a_i b_i."""
        return Subspace.span(nullspace(self.basis, self.field, self.ambient_dim), self.field, self.ambient_dim)

    def complement_basis(self) -> list[Row]:
        """Unit vectors on the non-pivot columns; together with ``basis`` a basis of F^N."""
        piv = set(self.pivots)
        f = self.field
        return [
            tuple(f.one if i == j else f.zero for i in range(self.ambient_dim))
            for j in range(self.ambient_dim)
            if j not in piv
        ]

    def transform(self, g: Matrix) -> "Subspace":
        """Image under v -> g v."""
        f = self.field
        images = [[_dot(grow, row, f) for grow in g] for row in self.basis]
        return Subspace.span(images, f, self.ambient_dim)

    def to_json(self) -> list[list]:
        return [[self.field.to_json(a) for a in row] for row in self.basis]

    def _check_compatible(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim or self.field != other.field:
            raise ValueError("subspaces live in different ambient spaces")


def _dot(a: Sequence, b: Sequence, field: Field) -> Scalar:
    acc = field.zero
    for x, y in zip(a, b):
        if x and y:
            acc = field.add(acc, field.mul(x, y))
    return acc
