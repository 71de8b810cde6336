"""Integer bookkeeping for the stratification of P(Sym^d V) by generalized rank.

All quantities are exact Python integers.  ``k`` always ranges over
``0 .. r``; strata with k > r are empty and are never tabulated.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from math import comb
from typing import Sequence

HOLDS = "holds"
FAILS = "fails"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class FanoParameters:
    """Ambient dimension n, plane dimension r, multidegree d = (d_1, .., d_s)."""

    n: int
    r: int
    d: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "d", tuple(int(x) for x in self.d))
        if self.n < 1:
            raise ValueError("n must be at least 1")
        if not 0 <= self.r <= self.n:
            raise ValueError(f"r={self.r} outside 0..n")
        if not self.d:
            raise ValueError("the multidegree needs at least one entry")
        if any(x < 1 for x in self.d):
            raise ValueError("degrees must be positive")

    @property
    def s(self) -> int:
        return len(self.d)

    @property
    def has_linear(self) -> bool:
        return any(x == 1 for x in self.d)

    @property
    def is_single_quadric(self) -> bool:
        return self.d == (2,)


@dataclass(frozen=True)
class DerivedConstants:
    dim_G: int
    binom_d_r: int
    delta: int
    delta_lower: int


@dataclass(frozen=True)
class StratumRow:
    k: int
    F: int
    stratum_bound: int
    fiber_dim: int
    candidate: int


@dataclass
class StratumTable:
    params: FanoParameters
    rows: list[StratumRow]
    R: int
    dim_G: int
    delta_lower: int
    inequality: str
    sharpness: str
    identity_holds: bool

    def to_dict(self) -> dict:
        return {
            "rows": [asdict(r) for r in self.rows],
            "R": self.R,
            "R_kind": "bound-based",
            "two_dim_G_minus_delta_lower": 2 * self.dim_G - self.delta_lower,
            "inequality_R_lt_2dimG_minus_delta_lower": self.inequality,
            "sharpness_R_eq_2dimG_minus_delta_lower_minus_1": self.sharpness,
            "identity_candidate_plus_F_eq_2dimG": self.identity_holds,
        }


def _check_k(k: int, params: FanoParameters) -> None:
    if not 0 <= k <= params.r:
        raise ValueError(f"k={k} outside 0..{params.r}")


def binom_d(j: int, d: Sequence[int]) -> int:
    """The multidegree binomial C(d + j, j) = sum_i C(d_i + j, j)."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    return sum(comb(di + j, j) for di in d)


def derived_constants(params: FanoParameters) -> DerivedConstants:
    n, r = params.n, params.r
    dim_G = (r + 1) * (n - r)
    b = binom_d(r, params.d)
    delta = dim_G - b
    return DerivedConstants(dim_G, b, delta, min(delta, n - 2 * r - params.s))


def F(k: int, params: FanoParameters) -> int:
    _check_k(k, params)
    n, r = params.n, params.r
    return (r + 1 - k) * (n - r - k) - binom_d(r - k, params.d) + 1


def G(k: int, params: FanoParameters) -> int:
    """The subtrahend C(d + r - k, r - k) of F."""
    _check_k(k, params)
    return binom_d(params.r - k, params.d)


def second_difference_G(k: int, params: FanoParameters) -> int:
    """G(k+1) - 2 G(k) + G(k-1), by direct differencing."""
    if not 1 <= k <= params.r - 1:
        raise ValueError(f"k={k} outside 1..{params.r - 1}")
    return G(k + 1, params) - 2 * G(k, params) + G(k - 1, params)


def second_difference_G_closed(k: int, params: FanoParameters) -> int:
    """Pascal-chain closed form sum_i C(d_i + r - k - 1, r - k + 1)."""
    if not 1 <= k <= params.r - 1:
        raise ValueError(f"k={k} outside 1..{params.r - 1}")
    r = params.r
    return sum(comb(di + r - k - 1, r - k + 1) for di in params.d)


def stratum_dim_bound(k: int, params: FanoParameters) -> int:
    """dim I_k, an upper bound for dim Y_k."""
    _check_k(k, params)
    n, r = params.n, params.r
    return (r + 1 - k) * (n - r + k) + binom_d(r - k, params.d) - 1


def fiber_dim(k: int, params: FanoParameters) -> int:
    _check_k(k, params)
    return k * (params.n - params.r)


def compute_R(params: FanoParameters) -> StratumTable:
    """Tabulate F, the stratum bounds and fiber dimensions; R = max candidate.

    R is computed from the stratum upper bounds (bound-based R).  Verdicts are
    not applicable when delta_ < 0 or some degree equals 1.
    """
    c = derived_constants(params)
    rows = []
    for k in range(params.r + 1):
        bound = stratum_dim_bound(k, params)
        fd = fiber_dim(k, params)
        rows.append(StratumRow(k, F(k, params), bound, fd, bound + 2 * fd))
    R = max(row.candidate for row in rows)
    identity = all(row.candidate + row.F == 2 * c.dim_G for row in rows)
    target = 2 * c.dim_G - c.delta_lower
    if c.delta_lower < 0 or params.has_linear:
        inequality = sharpness = NOT_APPLICABLE
    else:
        inequality = HOLDS if R < target else FAILS
        sharpness = HOLDS if R == target - 1 else FAILS
    return StratumTable(params, rows, R, c.dim_G, c.delta_lower, inequality, sharpness, identity)


@dataclass
class EndpointReport:
    params: FanoParameters
    values: list[int]
    min_value: int
    endpoint_min: int
    delta_lower_plus_1: int
    endpoint_min_holds: str
    decreasing: str
    concavity: str
    failures: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["params"] = {"n": self.params.n, "r": self.params.r, "d": list(self.params.d)}
        return d


def endpoint_minimum_check(params: FanoParameters) -> EndpointReport:
    """Check by direct evaluation that F is minimised at k = 0 or k = r.

    For d = (2) also checks strict decrease (needs delta_ >= 0); otherwise checks
    Delta^2 F = 2 - Delta^2 G <= 0 on interior k.  Failures are reported, not raised.
    """
    c = derived_constants(params)
    r = params.r
    values = [F(k, params) for k in range(r + 1)]
    lo = min(values)
    ends = min(values[0], values[-1])
    failures = []
    if params.has_linear:
        return EndpointReport(params, values, lo, ends, c.delta_lower + 1,
                              NOT_APPLICABLE, NOT_APPLICABLE, NOT_APPLICABLE)

    # Concave F needs no sign condition; the d = (2) argument uses delta_ >= 0.
    if c.delta_lower >= 0 or not params.is_single_quadric:
        ok = lo == ends == c.delta_lower + 1
        endpoint = HOLDS if ok else FAILS
        if not ok:
            failures.append(f"min F = {lo}, endpoints {ends}, delta_+1 = {c.delta_lower + 1}")
    else:
        endpoint = NOT_APPLICABLE

    decreasing = concavity = NOT_APPLICABLE
    if params.is_single_quadric:
        if c.delta_lower >= 0:
            steps_ok = all(
                values[k - 1] - values[k] == params.n - k - r and values[k - 1] > values[k]
                for k in range(1, r + 1)
            )
            decreasing = HOLDS if steps_ok else FAILS
            if not steps_ok:
                failures.append("F is not strictly decreasing with steps n - k - r")
    else:
        conc_ok = True
        for k in range(1, r):
            d2F = values[k + 1] - 2 * values[k] + values[k - 1]
            if d2F != 2 - second_difference_G(k, params) or d2F > 0:
                conc_ok = False
                failures.append(f"Delta^2 F({k}) = {d2F}")
        concavity = HOLDS if conc_ok else FAILS
    return EndpointReport(params, values, lo, ends, c.delta_lower + 1,
                          endpoint, decreasing, concavity, failures)


def sweep_parameters(n_max: int, r_max: int, s_max: int, d_max: int, d_min: int = 2):
    """Every (n, r, d) with 1 <= n <= n_max, 0 <= r <= min(r_max, n), and
    d a nondecreasing tuple of length <= s_max with entries in d_min..d_max."""
    from itertools import combinations_with_replacement

    degree_tuples = [
        dd for s in range(1, s_max + 1)
        for dd in combinations_with_replacement(range(d_min, d_max + 1), s)
    ]
    for n in range(1, n_max + 1):
        for r in range(0, min(r_max, n) + 1):
            for dd in degree_tuples:
                yield FanoParameters(n, r, dd)
