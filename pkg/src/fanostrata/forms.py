"""Sparse homogeneous forms and tuples of forms over an exact field.

A :class:`Form` in ``n + 1`` variables ``x0 .. xn`` is a mapping from exponent
vectors to nonzero coefficients.  Terms are kept sorted by exponent vector in
descending lexicographic order, which fixes both equality and the printed form.

Text grammar::

    3*x0^2*x1 - x2^3 + 1/2*x1^3        one form
    x0^2 + x1^2; x0*x1                 a tuple (semicolon separated)

Variable names are ``x<i>`` or ``X<i>``; coefficients are integers or ``p/q``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations_with_replacement
from math import comb
from typing import Iterator, Mapping, Sequence

from .fields import Field, Scalar

Exponents = tuple[int, ...]


class ParseError(ValueError):
    pass


def monomials(nvars: int, degree: int) -> list[Exponents]:
    """All exponent vectors of the given degree, descending lexicographic order."""
    if degree < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for v in combo:
            e[v] += 1
        out.append(tuple(e))
    out.sort(reverse=True)
    return out


def count_monomials(nvars: int, degree: int) -> int:
    return comb(nvars + degree - 1, degree) if nvars else int(degree == 0)


def _accumulate(terms: dict, e: Exponents, c: Scalar, field: Field) -> None:
    total = field.add(terms.get(e, field.zero), c)
    if total:
        terms[e] = total
    else:
        terms.pop(e, None)


@dataclass(frozen=True)
class Form:
    """A homogeneous polynomial of fixed degree in ``n + 1`` variables."""

    n: int
    degree: int
    terms: tuple[tuple[Exponents, Scalar], ...]
    field: Field

    def __post_init__(self):
        for e, c in self.terms:
            if len(e) != self.n + 1:
                raise ValueError(f"monomial {e} has wrong number of variables for n={self.n}")
            if sum(e) != self.degree:
                raise ValueError(f"monomial {e} is not of degree {self.degree}")
            if c == 0:
                raise ValueError("zero coefficient stored")

    @classmethod
    def from_dict(cls, n: int, degree: int, terms: Mapping[Exponents, Scalar], field: Field) -> "Form":
        cleaned = {}
        for e, c in terms.items():
            c = field(c)
            if c:
                cleaned[tuple(e)] = c
        return cls(n, degree, tuple(sorted(cleaned.items(), reverse=True)), field)

    @classmethod
    def zero(cls, n: int, degree: int, field: Field) -> "Form":
        return cls(n, degree, (), field)

    @classmethod
    def linear(cls, coeffs: Sequence, field: Field) -> "Form":
        n = len(coeffs) - 1
        return cls.from_dict(
            n, 1, {tuple(int(i == j) for i in range(n + 1)): c for j, c in enumerate(coeffs)}, field
        )

    @classmethod
    def monomial(cls, n: int, exponents: Sequence[int], field: Field, coeff=1) -> "Form":
        e = tuple(exponents)
        return cls.from_dict(n, sum(e), {e: coeff}, field)

    @classmethod
    def from_vector(cls, n: int, degree: int, vector: Sequence, field: Field) -> "Form":
        """Inverse of :meth:`vector` against the :func:`monomials` basis."""
        return cls.from_dict(n, degree, dict(zip(monomials(n + 1, degree), vector)), field)

    @cached_property
    def coeffs(self) -> dict[Exponents, Scalar]:
        return dict(self.terms)

    def __getitem__(self, e: Exponents) -> Scalar:
        return self.coeffs.get(tuple(e), self.field.zero)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __iter__(self) -> Iterator[tuple[Exponents, Scalar]]:
        return iter(self.terms)

    def vector(self) -> list[Scalar]:
        c = self.coeffs
        z = self.field.zero
        return [c.get(e, z) for e in monomials(self.n + 1, self.degree)]

    def variables(self) -> set[int]:
        return {i for e, _ in self.terms for i, a in enumerate(e) if a}

    def _check(self, other: "Form") -> None:
        if (self.n, self.degree, self.field) != (other.n, other.degree, other.field):
            raise ValueError("forms of different shape")

    def __add__(self, other: "Form") -> "Form":
        self._check(other)
        t = dict(self.terms)
        for e, c in other.terms:
            _accumulate(t, e, c, self.field)
        return Form.from_dict(self.n, self.degree, t, self.field)

    def __neg__(self) -> "Form":
        return self.scale(-1)

    def __sub__(self, other: "Form") -> "Form":
        return self + (-other)

    def scale(self, a) -> "Form":
        a = self.field(a)
        return Form.from_dict(self.n, self.degree, {e: self.field.mul(a, c) for e, c in self.terms}, self.field)

    def __mul__(self, other: "Form") -> "Form":
        if self.n != other.n or self.field != other.field:
            raise ValueError("forms in different rings")
        f = self.field
        t: dict = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                _accumulate(t, tuple(a + b for a, b in zip(e1, e2)), f.mul(c1, c2), f)
        return Form.from_dict(self.n, self.degree + other.degree, t, f)

    def __pow__(self, k: int) -> "Form":
        result = Form.from_dict(self.n, 0, {(0,) * (self.n + 1): 1}, self.field)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def derivative(self, j: int) -> "Form":
        """Formal partial derivative in the j-th variable (degree drops by one)."""
        if not 0 <= j <= self.n:
            raise IndexError(f"variable index {j} out of range for n={self.n}")
        if self.degree == 0:
            raise ValueError("cannot differentiate a constant")
        t = {}
        for e, c in self.terms:
            if e[j]:
                e2 = list(e)
                e2[j] -= 1
                t[tuple(e2)] = self.field.mul(e[j], c)
        return Form.from_dict(self.n, self.degree - 1, t, self.field)

    def substitute(self, images: Sequence[Sequence]) -> "Form":
        """Replace x_j by the linear form sum_i images[j][i] * y_i.

        The result lives in ``len(images[0])`` new variables.
        """
        if len(images) != self.n + 1:
            raise ValueError("need one image per variable")
        new_n = len(images[0]) - 1
        lins = [Form.linear(row, self.field) for row in images]
        powers: dict[tuple[int, int], Form] = {}
        one = Form.from_dict(new_n, 0, {(0,) * (new_n + 1): 1}, self.field)
        total = Form.zero(new_n, self.degree, self.field)
        for e, c in self.terms:
            term = one
            for j, a in enumerate(e):
                if a:
                    if (j, a) not in powers:
                        powers[j, a] = lins[j] ** a
                    term = term * powers[j, a]
            total = total + term.scale(c)
        return total

    def __str__(self) -> str:
        return format_form(self)


@dataclass(frozen=True)
class FormTuple:
    """An s-tuple of forms of multidegree (d_1, .., d_s) in the same ring."""

    forms: tuple[Form, ...]

    def __post_init__(self):
        if not self.forms:
            raise ValueError("a form tuple needs at least one form")
        n, field = self.forms[0].n, self.forms[0].field
        for f in self.forms:
            if f.n != n or f.field != field:
                raise ValueError("all forms must share n and the field")

    @classmethod
    def of(cls, *forms: Form) -> "FormTuple":
        return cls(tuple(forms))

    @property
    def n(self) -> int:
        return self.forms[0].n

    @property
    def field(self) -> Field:
        return self.forms[0].field

    @property
    def multidegree(self) -> tuple[int, ...]:
        return tuple(f.degree for f in self.forms)

    @property
    def s(self) -> int:
        return len(self.forms)

    def __len__(self) -> int:
        return len(self.forms)

    def __iter__(self) -> Iterator[Form]:
        return iter(self.forms)

    def __getitem__(self, i: int) -> Form:
        return self.forms[i]

    def __bool__(self) -> bool:
        return any(self.forms)

    def __add__(self, other: "FormTuple") -> "FormTuple":
        return FormTuple(tuple(a + b for a, b in zip(self.forms, other.forms, strict=True)))

    def scale(self, a) -> "FormTuple":
        return FormTuple(tuple(f.scale(a) for f in self.forms))

    def substitute(self, images: Sequence[Sequence]) -> "FormTuple":
        return FormTuple(tuple(f.substitute(images) for f in self.forms))

    def vector(self) -> list[Scalar]:
        out: list[Scalar] = []
        for f in self.forms:
            out.extend(f.vector())
        return out

    @classmethod
    def from_vector(cls, n: int, multidegree: Sequence[int], vector: Sequence, field: Field) -> "FormTuple":
        forms = []
        pos = 0
        for d in multidegree:
            size = count_monomials(n + 1, d)
            forms.append(Form.from_vector(n, d, vector[pos:pos + size], field))
            pos += size
        if pos != len(vector):
            raise ValueError("vector length does not match the multidegree")
        return cls(tuple(forms))

    def __str__(self) -> str:
        return format_tuple(self)


# ---------------------------------------------------------------- text I/O

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[xX](?P<idx>\d+))|(?P<op>[-+*^]))")


def _tokens(text: str) -> list[tuple[str, str]]:
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        pos = m.end()
        if m.group("num"):
            out.append(("num", m.group("num")))
        elif m.group("var"):
            out.append(("var", m.group("idx")))
        else:
            out.append(("op", m.group("op")))
    return out


def parse_form(text: str, n: int, field: Field, degree: int | None = None) -> Form:
    """Parse one homogeneous form in variables x0..xn.

    ``degree`` is required only for the zero form; otherwise it is inferred and,
    when given, checked.
    """
    toks = _tokens(text)
    if not toks:
        raise ParseError("empty polynomial")
    terms: dict[Exponents, Scalar] = {}
    degrees = set()
    i = 0
    while i < len(toks):
        sign = 1
        while i < len(toks) and toks[i][0] == "op" and toks[i][1] in "+-":
            if toks[i][1] == "-":
                sign = -sign
            i += 1
        coeff = Fraction(sign)
        exps = [0] * (n + 1)
        expect_factor = True
        while i < len(toks) and expect_factor:
            kind, val = toks[i]
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind == "var":
                idx = int(val)
                if idx > n:
                    raise ParseError(f"variable x{idx} exceeds n={n}")
                i += 1
                power = 1
                if i < len(toks) and toks[i] == ("op", "^"):
                    if i + 1 >= len(toks) or toks[i + 1][0] != "num" or "/" in toks[i + 1][1]:
                        raise ParseError("exponent must be a nonnegative integer")
                    power = int(toks[i + 1][1])
                    i += 2
                exps[idx] += power
            else:
                raise ParseError(f"unexpected operator {val!r}")
            if i < len(toks) and toks[i] == ("op", "*"):
                i += 1
                if i >= len(toks):
                    raise ParseError("dangling '*'")
            else:
                expect_factor = False
        if i < len(toks) and not (toks[i][0] == "op" and toks[i][1] in "+-"):
            raise ParseError(f"expected '+' or '-' near token {toks[i][1]!r}")
        if i == len(toks) and toks[-1][0] == "op":
            raise ParseError("dangling operator")
        e = tuple(exps)
        degrees.add(sum(e))
        _accumulate(terms, e, field(coeff), field)
    if len(degrees) > 1:
        raise ParseError(f"polynomial is not homogeneous (degrees {sorted(degrees)})")
    (found,) = degrees
    if not terms:
        if degree is None and found > 0:
            degree = found
        if degree is None:
            raise ParseError("the degree of a zero form must be given explicitly")
        return Form.zero(n, degree, field)
    if degree is not None and found != degree:
        raise ParseError(f"expected degree {degree}, found {found}")
    return Form.from_dict(n, found, terms, field)


def parse_tuple(text: str, n: int, field: Field, multidegree: Sequence[int] | None = None) -> FormTuple:
    parts = [p for p in text.split(";")]
    if multidegree is not None and len(multidegree) != len(parts):
        raise ParseError(f"{len(parts)} forms given for multidegree {tuple(multidegree)}")
    degs = multidegree or [None] * len(parts)
    return FormTuple(tuple(parse_form(p, n, field, d) for p, d in zip(parts, degs)))


def _format_scalar(c: Scalar) -> str:
    if isinstance(c, Fraction) and c.denominator != 1:
        return f"{c.numerator}/{c.denominator}"
    return str(int(c))


def format_form(f: Form) -> str:
    if not f.terms:
        return "0"
    pieces = []
    for e, c in f.terms:
        negative = c < 0
        mag = -c if negative else c
        factors = [
            f"x{i}" + (f"^{a}" if a > 1 else "") for i, a in enumerate(e) if a
        ]
        if mag != 1 or not factors:
            factors.insert(0, _format_scalar(mag))
        body = "*".join(factors)
        if not pieces:
            pieces.append(("-" if negative else "") + body)
        else:
            pieces.append((" - " if negative else " + ") + body)
    return "".join(pieces)


def format_tuple(t: FormTuple) -> str:
    return "; ".join(format_form(f) for f in t.forms)
