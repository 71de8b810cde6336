"""Brute-force ground truth over small prime fields.

Everything here enumerates: subspaces of F_q^N in RREF (grouped by pivot
pattern), r-planes on a projective scheme, fibers of the forgetful map
(Lambda, [phi]) -> [phi], and every (phi, W) pair for the universal property.
"""

from __future__ import annotations

import os
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterator, Sequence

import numpy as np

from .apolarity import contract, essential_subspace, membership, rewrite_operator
from .fields import Field, GF
from .forms import Form, FormTuple, count_monomials, monomials
from .linalg import Subspace, rank
from .strata import FanoParameters

DEFAULT_CAP = 10**7
CAP_ENV = "FANOSTRATA_ENUM_CAP"


class EnumerationCapExceeded(RuntimeError):
    pass


def enumeration_cap(cap: int | None = None) -> int:
    if cap is not None:
        return cap
    return int(os.environ.get(CAP_ENV, DEFAULT_CAP))


@dataclass(frozen=True)
class PrimePowerField:
    p: int
    e: int = 1

    def __post_init__(self):
        GF(self.p)  # validates primality
        if self.e != 1:
            raise NotImplementedError("only prime fields (e = 1) are supported")

    @property
    def q(self) -> int:
        return self.p**self.e

    @property
    def field(self) -> Field:
        return GF(self.p)


def _q(q) -> int:
    return q.q if isinstance(q, PrimePowerField) else int(q)


def _field(q) -> Field:
    if isinstance(q, PrimePowerField):
        return q.field
    if isinstance(q, Field):
        return q
    return GF(int(q))


def gaussian_binomial(k: int, m: int, q) -> int:
    """Number of k-dimensional subspaces of F_q^m."""
    q = _q(q)
    if not 0 <= k <= m:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (m - i) - 1
        den *= q ** (k - i) - 1
    return num // den


def pivot_patterns(dim: int, ambient: int) -> list[tuple[int, ...]]:
    return list(combinations(range(ambient), dim))


def free_cells(pattern: Sequence[int], ambient: int) -> list[tuple[int, int]]:
    """(row, column) positions left free by an RREF pivot pattern."""
    piv = set(pattern)
    return [(i, j) for i, pc in enumerate(pattern) for j in range(pc + 1, ambient) if j not in piv]


def subspaces_with_pattern(pattern: Sequence[int], ambient: int, field: Field) -> Iterator[Subspace]:
    cells = free_cells(pattern, ambient)
    zero, one = field.zero, field.one
    template = [[zero] * ambient for _ in pattern]
    for i, pc in enumerate(pattern):
        template[i][pc] = one
    for values in product(field.elements(), repeat=len(cells)):
        rows = [row[:] for row in template]
        for (i, j), v in zip(cells, values):
            rows[i][j] = v
        yield Subspace(ambient, tuple(tuple(r) for r in rows), field)


def enumerate_subspaces(dim: int, ambient: int, q, cap: int | None = None) -> Iterator[Subspace]:
    """Every dim-dimensional subspace of F_q^ambient exactly once, in RREF."""
    if not 0 <= dim <= ambient:
        raise ValueError(f"no {dim}-dimensional subspaces of a {ambient}-dimensional space")
    total = gaussian_binomial(dim, ambient, q)
    limit = enumeration_cap(cap)
    if total > limit:
        raise EnumerationCapExceeded(f"{total} subspaces exceed the enumeration cap {limit}")
    field = _field(q)
    for pattern in pivot_patterns(dim, ambient):
        yield from subspaces_with_pattern(pattern, ambient, field)


def projective_vectors(length: int, field: Field) -> Iterator[tuple]:
    """One representative per point of P(F_q^length): first nonzero entry is 1."""
    for lead in range(length):
        for tail in product(field.elements(), repeat=length - lead - 1):
            yield (0,) * lead + (1,) + tail


# ------------------------------------------------------------ Fano points


def restrict(f: FormTuple, plane: Subspace) -> FormTuple:
    """Pull f back along t -> sum_i t_i * basis_i (a form in dim(plane) variables)."""
    images = [[row[j] for row in plane.basis] for j in range(plane.ambient_dim)]
    return f.substitute(images)


def vanishes_on(f: FormTuple, plane: Subspace) -> bool:
    """Identical vanishing of every f_i on the plane, tested coefficient-wise."""
    return not restrict(f, plane)


def vanishes_pointwise(f: FormTuple, plane: Subspace) -> bool:
    """Vanishing at every F_q-point of the plane (only meaningful when q > max d)."""
    fld = f.field
    for t in projective_vectors(plane.dim, fld):
        point = [sum(a * b for a, b in zip(t, col)) % fld.p for col in zip(*plane.basis)]
        for form in f:
            val = 0
            for e, c in form.terms:
                term = c
                for x, a in zip(point, e):
                    if a:
                        term = term * pow(x, a, fld.p) % fld.p
                val = (val + term) % fld.p
            if val:
                return False
    return True


def _fano_chunk(args) -> list[Subspace]:
    f, patterns, ambient = args
    fld = f.field
    return [
        plane
        for pattern in patterns
        for plane in subspaces_with_pattern(pattern, ambient, fld)
        if vanishes_on(f, plane)
    ]


def _check_tuple(params: FanoParameters, f: FormTuple, q) -> None:
    if f.n != params.n or f.multidegree != params.d:
        raise ValueError("forms do not match the parameter pack")
    if f.field != _field(q):
        raise ValueError("forms are defined over a different field")


def fano_points(params: FanoParameters, f: FormTuple, q, cap: int | None = None,
                workers: int = 1) -> list[Subspace]:
    """All F_q-rational r-planes on the zero locus of f, sorted by basis matrix.

    Work is split by pivot pattern; with ``workers > 1`` the patterns are
    spread over a process pool.  The output order does not depend on it.
    """
    _check_tuple(params, f, q)
    if not f:
        raise ValueError("f = 0: every r-plane lies on X (the trivial case)")
    dim, ambient = params.r + 1, params.n + 1
    total = gaussian_binomial(dim, ambient, q)
    limit = enumeration_cap(cap)
    if total > limit:
        raise EnumerationCapExceeded(f"{total} subspaces exceed the enumeration cap {limit}")
    patterns = pivot_patterns(dim, ambient)
    if workers > 1:
        chunks = [(f, patterns[i::workers], ambient) for i in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            found = [p for part in pool.map(_fano_chunk, chunks) for p in part]
    else:
        found = _fano_chunk((f, patterns, ambient))
    return sorted(found, key=lambda s: s.basis)


# ------------------------------------------------------------ fibers of h


@dataclass
class FiberReport:
    phi: FormTuple
    m: int
    k: int
    members: list[Subspace]
    expected_count: int
    containing_M: list[Subspace] | None = None

    @property
    def count(self) -> int:
        return len(self.members)

    @property
    def count_matches(self) -> bool:
        return self.count == self.expected_count

    @property
    def set_identity_holds(self) -> bool | None:
        if self.containing_M is None:
            return None
        return set(self.members) == set(self.containing_M)


def fiber_of_h(phi: FormTuple, params: FanoParameters, q, reference_m: int | None = None,
               cap: int | None = None) -> FiberReport:
    """All (r+1)-dimensional Lambda with phi in Sym^d Lambda.

    When p > max d, M(phi) is computed and the fiber is compared with
    {Lambda : M(phi) <= Lambda}; otherwise ``reference_m`` must be supplied.
    """
    _check_tuple(params, phi, q)
    if not phi:
        raise ValueError("phi = 0 has no point in P(Sym^d V)")
    fld = phi.field
    apolar_ok = not fld.p or fld.p > max(phi.multidegree)
    M = None
    if apolar_ok:
        M = essential_subspace(phi).M
        m = M.dim
        if reference_m is not None and reference_m != m:
            raise ValueError(f"reference m={reference_m} disagrees with computed m={m}")
    elif reference_m is None:
        raise ValueError(f"GF({fld.p}) is too small to compute M(phi); pass reference_m")
    else:
        m = reference_m
    r, n = params.r, params.n
    k = r + 1 - m
    members, containing = [], []
    for plane in enumerate_subspaces(r + 1, n + 1, q, cap):
        if membership(phi, plane):
            members.append(plane)
        if M is not None and M <= plane:
            containing.append(plane)
    expected = gaussian_binomial(k, n - r + k, q) if k >= 0 else 0
    return FiberReport(phi, m, k, members, expected, containing if M is not None else None)


def stratum_membership(phi: FormTuple, k: int, params: FanoParameters) -> bool:
    """[phi] in Y'_k, i.e. m(phi) <= r + 1 - k.  The condition <f, phi> != 0 is separate."""
    if not 0 <= k <= params.r:
        raise ValueError(f"k={k} outside 0..{params.r}")
    return essential_subspace(phi).m <= params.r + 1 - k


# ------------------------------------------------------------ random data


def random_form_tuple(n: int, multidegree: Sequence[int], field: Field, rng: random.Random,
                      density: float = 0.5, bound: int = 5) -> FormTuple:
    forms = []
    for d in multidegree:
        terms = {}
        for e in monomials(n + 1, d):
            if rng.random() < density:
                c = rng.randrange(field.p) if field.p else rng.randint(-bound, bound)
                terms[e] = c
        forms.append(Form.from_dict(n, d, terms, field))
    return FormTuple(tuple(forms))


def random_invertible(size: int, field: Field, rng: random.Random, bound: int = 5) -> list[list]:
    while True:
        g = [[field(rng.randrange(field.p) if field.p else rng.randint(-bound, bound))
              for _ in range(size)] for _ in range(size)]
        if rank(g, field) == size:
            return g


def act(g: Sequence[Sequence], phi: FormTuple) -> FormTuple:
    """GL(V) acting on Sym^d V through v -> g v (so x_j -> sum_i g_ij x_i)."""
    size = len(g)
    return phi.substitute([[g[i][j] for i in range(size)] for j in range(size)])


# ------------------------------------------------------------ universal property


@dataclass
class SweepResult:
    name: str
    checked: int = 0
    failures: int = 0
    details: dict = field(default_factory=dict)
    examples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.failures == 0


def all_subspaces(ambient: int, q, cap: int | None = None) -> list[Subspace]:
    return [W for w in range(ambient + 1) for W in enumerate_subspaces(w, ambient, q, cap)]


def universal_property_exhaustive(n: int, multidegree: Sequence[int], p: int,
                                  cap: int | None = None) -> SweepResult:
    """Call membership and M(phi) <= W on every projective phi and every W.

    One Python call per pair; practical only for tiny coefficient spaces.
    """
    fld = GF(p)
    fld.require_apolarity(max(multidegree))
    N = sum(count_monomials(n + 1, d) for d in multidegree)
    subspaces = all_subspaces(n + 1, p, cap)
    res = SweepResult("universal-property")
    for vec in projective_vectors(N, fld):
        phi = FormTuple.from_vector(n, multidegree, vec, fld)
        M = essential_subspace(phi).M
        for W in subspaces:
            res.checked += 1
            if membership(phi, W) != (M <= W):
                res.failures += 1
                if len(res.examples) < 5:
                    res.examples.append({"phi": str(phi), "W": W.to_json()})
    res.details = {"phi_classes": (p**N - 1) // (p - 1), "subspaces": len(subspaces)}
    return res


def _basis_tuples(n: int, multidegree: Sequence[int], fld: Field) -> list[FormTuple]:
    """phi's with one coefficient 1 and the rest 0, in FormTuple.vector order."""
    out = []
    for i, d in enumerate(multidegree):
        for e in monomials(n + 1, d):
            forms = [Form.zero(n, dd, fld) for dd in multidegree]
            forms[i] = Form.monomial(n, e, fld)
            out.append(FormTuple(tuple(forms)))
    return out


def direct_condition_matrix(W: Subspace, multidegree: Sequence[int]) -> np.ndarray:
    """Rows: coefficients, after rewriting in W-adapted coordinates, of the
    monomials that touch a complement variable.  phi in Sym^d W iff K phi = 0."""
    n = W.ambient_dim - 1
    w = W.dim
    blocks = []
    col = 0
    sizes = [count_monomials(n + 1, d) for d in multidegree]
    N = sum(sizes)
    for d, size in zip(multidegree, sizes):
        op = rewrite_operator(W, d)
        outside = [e for e in monomials(n + 1, d) if any(e[w:])]
        index = {e: i for i, e in enumerate(outside)}
        block = np.zeros((len(outside), N), dtype=np.int64)
        for j, e in enumerate(monomials(n + 1, d)):
            for e2, c in op[e].terms:
                if e2 in index:
                    block[index[e2], col + j] = int(c)
        blocks.append(block)
        col += size
    return np.vstack(blocks)


def apolar_condition_matrix(W: Subspace, multidegree: Sequence[int]) -> np.ndarray:
    """Rows: l o phi coefficients for l in a basis of W^perp.  M(phi) <= W iff L phi = 0."""
    n = W.ambient_dim - 1
    fld = W.field
    basis = _basis_tuples(n, multidegree, fld)
    rows = []
    for ell in W.annihilator().basis:
        cols = [contract(ell, b).vector() for b in basis]
        rows.extend(zip(*cols))
    N = len(basis)
    if not rows:
        return np.zeros((0, N), dtype=np.int64)
    return np.array([[int(a) for a in row] for row in rows], dtype=np.int64)


def _all_vectors(length: int, p: int) -> np.ndarray:
    if length == 0:
        return np.zeros((1, 0), dtype=np.int64)
    grids = np.indices((p,) * length).reshape(length, -1).T
    return grids.astype(np.int64)


def _zero_codes(mat: np.ndarray, hi: np.ndarray, lo: np.ndarray, h: int, p: int):
    """Integer labels with code_hi[a] == code_lo[b]  iff  mat (a, b) == 0 mod p."""
    if mat.shape[0] == 0:
        return np.zeros(len(hi), dtype=np.int64), np.zeros(len(lo), dtype=np.int64)
    u = (-(hi @ mat[:, :h].T)) % p
    v = (lo @ mat[:, h:].T) % p
    _, inv = np.unique(np.vstack([u, v]), axis=0, return_inverse=True)
    inv = inv.reshape(-1)
    return inv[: len(hi)], inv[len(hi):]


def universal_property_sweep(n: int, multidegree: Sequence[int], p: int,
                             cap: int | None = None, chunk: int = 512) -> SweepResult:
    """Exhaustive check of membership(phi, W) <=> M(phi) <= W over GF(p).

    Both predicates are linear in the coefficient vector of phi.  Their
    condition matrices are assembled from the library's own coordinate
    rewrite and contraction of basis monomials, then evaluated on every
    projective class of phi by splitting the vector as (high, low) halves.
    """
    fld = GF(p)
    fld.require_apolarity(max(multidegree))
    N = sum(count_monomials(n + 1, d) for d in multidegree)
    h = N // 2
    limit = enumeration_cap(cap)
    if p ** max(h, N - h) > limit:
        raise EnumerationCapExceeded(f"half-tables of size {p ** (N - h)} exceed the cap {limit}")
    hi_all = _all_vectors(h, p)
    lo_all = _all_vectors(N - h, p)

    def normalized(arr):
        if arr.shape[1] == 0:
            return np.zeros(len(arr), dtype=bool)
        nz = arr != 0
        first = np.argmax(nz, axis=1)
        return nz.any(axis=1) & (arr[np.arange(len(arr)), first] == 1)

    hi_norm = np.flatnonzero(normalized(hi_all))
    lo_norm = np.flatnonzero(normalized(lo_all))
    hi_zero = np.flatnonzero(~(hi_all != 0).any(axis=1))

    subspaces = all_subspaces(n + 1, p, cap)
    res = SweepResult("universal-property")
    for W in subspaces:
        K = direct_condition_matrix(W, multidegree)
        L = apolar_condition_matrix(W, multidegree)
        kh, kl = _zero_codes(K, hi_all, lo_all, h, p)
        lh, ll = _zero_codes(L, hi_all, lo_all, h, p)
        bad = 0
        # Classes whose high half is normalized, paired with every low half.
        for start in range(0, len(hi_norm), chunk):
            idx = hi_norm[start:start + chunk]
            direct = kh[idx][:, None] == kl[None, :]
            indirect = lh[idx][:, None] == ll[None, :]
            bad += int(np.count_nonzero(direct != indirect))
        # Classes with zero high half and normalized low half.
        for z in hi_zero:
            direct = kh[z] == kl[lo_norm]
            indirect = lh[z] == ll[lo_norm]
            bad += int(np.count_nonzero(direct != indirect))
        res.checked += len(hi_norm) * len(lo_all) + len(hi_zero) * len(lo_norm)
        if bad:
            res.failures += bad
            if len(res.examples) < 5:
                res.examples.append({"W": W.to_json(), "mismatches": bad})
    res.details = {
        "phi_classes": (p**N - 1) // (p - 1),
        "subspaces": len(subspaces),
        "coefficients": N,
    }
    return res
