"""Named property suites, shared by the CLI ``verify`` command and the tests."""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Sequence

from .apolarity import essential_subspace, quadratic_from_matrix, quadratic_rank, witness_form
from .fields import GF, QQ
from .forms import FormTuple, monomials
from .linalg import rank
from .oracle import (
    SweepResult,
    act,
    enumerate_subspaces,
    fiber_of_h,
    free_cells,
    gaussian_binomial,
    pivot_patterns,
    projective_vectors,
    random_invertible,
    universal_property_exhaustive,
    universal_property_sweep,
)
from .strata import (
    HOLDS,
    FanoParameters,
    compute_R,
    derived_constants,
    endpoint_minimum_check,
    F,
    second_difference_G,
    second_difference_G_closed,
    sweep_parameters,
)

SUITES = ("universal-property", "fiber-law", "quadratic-rank", "combinatorics-sweep", "enumeration-counts")


def _fail(res: SweepResult, info) -> None:
    res.failures += 1
    if len(res.examples) < 10:
        res.examples.append(info)


def combinatorics_sweep(n_max: int = 14, r_max: int = 5, s_max: int = 3, d_max: int = 6) -> SweepResult:
    res = SweepResult("combinatorics-sweep")
    packs = 0
    for params in sweep_parameters(n_max, r_max, s_max, d_max):
        packs += 1
        c = derived_constants(params)
        n, r, s = params.n, params.r, params.s
        tag = {"n": n, "r": r, "d": list(params.d)}

        res.checked += 1
        if F(0, params) != c.delta + 1 or F(r, params) != n - 2 * r - s + 1:
            _fail(res, {**tag, "check": "endpoint values"})

        for k in range(1, r):
            res.checked += 1
            direct = second_difference_G(k, params)
            if direct != second_difference_G_closed(k, params):
                _fail(res, {**tag, "k": k, "check": "pascal chain"})
            if not params.is_single_quadric and direct < 2:
                _fail(res, {**tag, "k": k, "check": "second difference >= 2"})
            if params.is_single_quadric and direct != 1:
                _fail(res, {**tag, "k": k, "check": "second difference = 1"})

        table = compute_R(params)
        res.checked += 1
        if not table.identity_holds:
            _fail(res, {**tag, "check": "candidate + F = 2 dim G"})
        if c.delta_lower >= 0:
            res.checked += 1
            if table.inequality != HOLDS or table.sharpness != HOLDS:
                _fail(res, {**tag, "check": "R = 2 dim G - delta_ - 1", "R": table.R})

        rep = endpoint_minimum_check(params)
        res.checked += 1
        if rep.failures:
            _fail(res, {**tag, "check": "endpoint minimum", "failures": rep.failures})
        if c.delta_lower >= 0 and rep.endpoint_min_holds != HOLDS:
            _fail(res, {**tag, "check": "min F = delta_ + 1"})
    res.details = {"parameter_packs": packs, "n_max": n_max, "r_max": r_max, "s_max": s_max, "d_max": d_max}
    return res


def enumeration_counts(dim_max: int = 3, ambient_max: int = 5, qs: Sequence[int] = (2, 3, 5, 7)) -> SweepResult:
    res = SweepResult("enumeration-counts")
    for q in qs:
        for ambient in range(0, ambient_max + 1):
            for dim in range(0, min(dim_max, ambient) + 1):
                res.checked += 1
                expected = gaussian_binomial(dim, ambient, q)
                by_pattern = sum(q ** len(free_cells(p, ambient)) for p in pivot_patterns(dim, ambient))
                seen = set()
                canonical = True
                for W in enumerate_subspaces(dim, ambient, q):
                    seen.add(W.basis)
                    if W.dim != dim:
                        canonical = False
                count = len(seen)
                if not (count == expected == by_pattern and canonical):
                    _fail(res, {"q": q, "dim": dim, "ambient": ambient, "count": count, "expected": expected})
    res.details = {"dim_max": dim_max, "ambient_max": ambient_max, "q": list(qs)}
    return res


def universal_property(q: int, n: int, d: Sequence[int], scalar: bool = False) -> SweepResult:
    if scalar:
        return universal_property_exhaustive(n, d, q)
    return universal_property_sweep(n, d, q)


def fiber_law(q: int, n: int, r: int, d: Sequence[int], samples: int = 50, seed: int = 0) -> SweepResult:
    """Witness forms for every k and random GL-translates of them."""
    params = FanoParameters(n, r, tuple(d))
    fld = GF(q)
    rng = random.Random(seed)
    res = SweepResult("fiber-law")
    per_k = {}
    for k in range(r + 1):
        base = witness_form(params, k, fld)
        phis = [base] + [act(random_invertible(n + 1, fld, rng), base) for _ in range(samples)]
        counts = set()
        for phi in phis:
            res.checked += 1
            rep = fiber_of_h(phi, params, q)
            counts.add(rep.count)
            if not (rep.k == k and rep.count_matches and rep.set_identity_holds):
                _fail(res, {"k": k, "phi": str(phi), "count": rep.count, "expected": rep.expected_count})
        per_k[k] = {"expected": gaussian_binomial(k, n - r + k, q), "observed": sorted(counts)}
    res.details = {"q": q, "n": n, "r": r, "d": list(d), "samples": samples, "seed": seed, "per_k": per_k}
    return res


def random_symmetric(size: int, rng: random.Random, bound: int = 3, max_rank: int | None = None):
    """A random symmetric integer matrix, optionally of low rank (sum of rank-one squares)."""
    if max_rank is None:
        B = [[0] * size for _ in range(size)]
        for i in range(size):
            for j in range(i, size):
                B[i][j] = B[j][i] = rng.randint(-bound, bound)
        return B
    B = [[0] * size for _ in range(size)]
    for _ in range(max_rank):
        v = [rng.randint(-bound, bound) for _ in range(size)]
        w = rng.choice([-1, 1, 2])
        for i in range(size):
            for j in range(size):
                B[i][j] += w * v[i] * v[j]
    return B


def quadratic_rank_random(samples: int = 200, n_max: int = 5, seed: int = 0) -> SweepResult:
    """m(phi) against rank(B) for seeded random symmetric rational matrices."""
    rng = random.Random(seed)
    res = SweepResult("quadratic-rank")
    ranks = {}
    for _ in range(samples):
        n = rng.randint(1, n_max)
        size = n + 1
        low = rng.random() < 0.5
        B = random_symmetric(size, rng, max_rank=rng.randint(0, size) if low else None)
        phi = quadratic_from_matrix(B, QQ)
        m = essential_subspace(phi).m
        rk = rank([[Fraction(a) for a in row] for row in B], QQ)
        ranks[rk] = ranks.get(rk, 0) + 1
        res.checked += 1
        if m != rk:
            _fail(res, {"B": B, "m": m, "rank": rk})
    res.details = {"samples": samples, "n_max": n_max, "seed": seed, "rank_histogram": dict(sorted(ranks.items()))}
    return res


def quadratic_rank_exhaustive(q: int, n: int) -> SweepResult:
    """Every quadric over GF(q) in n + 1 variables up to scalar: m = Hessian rank."""
    fld = GF(q)
    res = SweepResult("quadratic-rank")
    N = len(monomials(n + 1, 2))
    histogram = {}
    for vec in projective_vectors(N, fld):
        phi = FormTuple.from_vector(n, (2,), vec, fld)
        m = essential_subspace(phi).m
        rk = quadratic_rank(phi)
        histogram[m] = histogram.get(m, 0) + 1
        res.checked += 1
        if m != rk:
            _fail(res, {"phi": str(phi), "m": m, "rank": rk})
    expected = {k: c // (q - 1) for k, c in symmetric_rank_counts(n + 1, q).items() if k}
    res.checked += 1
    if histogram != expected:
        _fail(res, {"classes_by_m": histogram, "expected_by_rank": expected})
    res.details = {"q": q, "n": n, "classes_by_m": dict(sorted(histogram.items())),
                   "expected_by_rank": expected}
    return res


def symmetric_rank_counts(size: int, q: int) -> dict[int, int]:
    """Number of size x size symmetric matrices of each rank over GF(q), q odd.

    MacWilliams' formula: with k = 2s or 2s + 1 the count is
    prod_{i=1..s} q^{2i} / (q^{2i} - 1) * prod_{i=0..k-1} (q^{size-i} - 1).
    """
    out = {}
    for k in range(size + 1):
        s = k // 2
        num = 1
        den = 1
        for i in range(1, s + 1):
            num *= q ** (2 * i)
            den *= q ** (2 * i) - 1
        for i in range(k):
            num *= q ** (size - i) - 1
        out[k] = num // den
    return out


def run_suite(name: str, **kw) -> SweepResult:
    if name == "combinatorics-sweep":
        return combinatorics_sweep(kw.get("n_max", 14), kw.get("r_max", 5), kw.get("s_max", 3), kw.get("d_max", 6))
    if name == "enumeration-counts":
        return enumeration_counts(kw.get("dim_max", 3), kw.get("ambient_max", 5), tuple(kw.get("qs", (2, 3, 5, 7))))
    if name == "universal-property":
        return universal_property(kw.get("q", 7), kw.get("n", 2), tuple(kw.get("d", (2,))), kw.get("scalar", False))
    if name == "fiber-law":
        return fiber_law(kw.get("q", 5), kw.get("n", 3), kw.get("r", 1), tuple(kw.get("d", (2,))),
                         kw.get("samples", 50), kw.get("seed", 0))
    if name == "quadratic-rank":
        if kw.get("q"):
            return quadratic_rank_exhaustive(kw["q"], kw.get("n", 2))
        return quadratic_rank_random(kw.get("samples", 200), kw.get("n_max", 5), kw.get("seed", 0))
    raise KeyError(name)
