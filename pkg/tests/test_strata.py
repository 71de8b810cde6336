from math import comb

import pytest
from hypothesis import given, strategies as st

from fanostrata.strata import (
    FAILS,
    HOLDS,
    NOT_APPLICABLE,
    F,
    FanoParameters,
    binom_d,
    compute_R,
    derived_constants,
    endpoint_minimum_check,
    fiber_dim,
    second_difference_G,
    second_difference_G_closed,
    stratum_dim_bound,
    sweep_parameters,
)
from fanostrata.oracle import gaussian_binomial


@st.composite
def packs(draw, min_degree=2):
    n = draw(st.integers(1, 16))
    r = draw(st.integers(0, min(n, 6)))
    d = tuple(draw(st.lists(st.integers(min_degree, 7), min_size=1, max_size=4)))
    return FanoParameters(n, r, d)


def test_parameter_validation():
    for bad in [(0, 0, (2,)), (3, 4, (2,)), (3, -1, (2,)), (3, 1, ()), (3, 1, (0,))]:
        with pytest.raises(ValueError):
            FanoParameters(*bad)


def test_binom_d_examples():
    for r in range(6):
        assert binom_d(r, (2,)) == (r + 1) * (r + 2) // 2
    for n in range(1, 12):
        assert binom_d(1, (n,)) == n + 1
    assert binom_d(0, (2, 3, 5)) == 3
    with pytest.raises(ValueError):
        binom_d(-1, (2,))


@pytest.mark.parametrize("n", range(3, 13))
def test_hypersurface_lines_constants(n):
    c = derived_constants(FanoParameters(n, 1, (n,)))
    assert c.delta == c.delta_lower == n - 3


def test_derived_constants_examples():
    c = derived_constants(FanoParameters(3, 1, (3,)))
    assert (c.dim_G, c.binom_d_r, c.delta, c.delta_lower) == (4, 4, 0, 0)
    c = derived_constants(FanoParameters(4, 1, (3,)))
    assert (c.dim_G, c.delta, c.delta_lower) == (6, 2, 1)
    for n in range(1, 8):
        for d in [(2,), (3, 4), (2, 2, 5)]:
            c = derived_constants(FanoParameters(n, 0, d))
            assert c.delta == c.delta_lower == n - len(d)


@given(packs())
def test_F_endpoints(p):
    c = derived_constants(p)
    assert F(0, p) == c.delta + 1
    assert F(p.r, p) == p.n - 2 * p.r - p.s + 1


@given(packs())
def test_quadric_steps(p):
    q = FanoParameters(p.n, p.r, (2,))
    for k in range(1, q.r + 1):
        assert F(k - 1, q) - F(k, q) == q.n - k - q.r


def test_k_range_errors():
    p = FanoParameters(4, 2, (3,))
    for fn in (F, stratum_dim_bound, fiber_dim):
        with pytest.raises(ValueError):
            fn(3, p)
        with pytest.raises(ValueError):
            fn(-1, p)
    for fn in (second_difference_G, second_difference_G_closed):
        with pytest.raises(ValueError):
            fn(0, p)
        with pytest.raises(ValueError):
            fn(2, p)


@given(packs(min_degree=1))
def test_second_difference_pascal_chain(p):
    for k in range(1, p.r):
        direct = second_difference_G(k, p)
        assert direct == second_difference_G_closed(k, p)
        if p.d == (2,):
            assert direct == 1
        elif not p.has_linear:
            assert direct >= 2


def test_second_difference_cubic_at_r_minus_1():
    for r in range(2, 6):
        assert second_difference_G(r - 1, FanoParameters(8, r, (3,))) == comb(3, 2)


@given(packs(min_degree=1))
def test_stratum_bound_identity(p):
    c = derived_constants(p)
    assert stratum_dim_bound(0, p) == c.dim_G + c.binom_d_r - 1
    assert stratum_dim_bound(p.r, p) == p.n + p.s - 1
    for k in range(p.r + 1):
        assert stratum_dim_bound(k, p) + 2 * fiber_dim(k, p) + F(k, p) == 2 * c.dim_G


def test_fiber_dim_is_degree_of_gaussian_binomial():
    # the leading exponent of [m choose k]_q is k(m - k); read it off numerically
    for n, r in [(3, 1), (5, 2), (6, 0), (4, 4)]:
        p = FanoParameters(n, r, (2,))
        for k in range(r + 1):
            m = n - r + k
            q = 10**6
            g = gaussian_binomial(k, m, q)
            assert q ** fiber_dim(k, p) <= g < 2 * q ** fiber_dim(k, p)


def test_compute_R_examples():
    t = compute_R(FanoParameters(4, 1, (3,)))
    assert (t.dim_G, t.delta_lower, t.R) == (6, 1, 10)
    assert t.inequality == t.sharpness == HOLDS
    assert [row.candidate for row in t.rows] == [2 * 6 - F(k, t.params) for k in range(2)]

    for n in range(1, 9):
        for d in [(2,), (3, 3)]:
            p = FanoParameters(n, 0, d)
            t = compute_R(p)
            assert len(t.rows) == 1 and t.identity_holds
            assert t.R == t.rows[0].stratum_bound == n + p.s - 1
            if t.delta_lower >= 0:
                assert t.R == 2 * t.dim_G - t.delta_lower - 1


@given(packs())
def test_sharpness(p):
    t = compute_R(p)
    assert t.identity_holds
    if t.delta_lower >= 0:
        assert t.R == 2 * t.dim_G - t.delta_lower - 1
        assert t.inequality == t.sharpness == HOLDS
    else:
        assert t.inequality == t.sharpness == NOT_APPLICABLE


def test_linear_entries_are_not_applicable():
    t = compute_R(FanoParameters(6, 1, (1, 2)))
    assert t.inequality == t.sharpness == NOT_APPLICABLE
    rep = endpoint_minimum_check(FanoParameters(6, 1, (1, 2)))
    assert rep.endpoint_min_holds == rep.decreasing == rep.concavity == NOT_APPLICABLE


def test_to_dict_labels_bound_based():
    d = compute_R(FanoParameters(3, 1, (3,))).to_dict()
    assert d["R_kind"] == "bound-based"
    assert d["rows"][0] == {"k": 0, "F": 1, "stratum_bound": 7, "fiber_dim": 0, "candidate": 7}


def test_endpoint_quadric_decreasing():
    rep = endpoint_minimum_check(FanoParameters(10, 3, (2,)))
    assert rep.decreasing == rep.endpoint_min_holds == HOLDS
    assert rep.values == sorted(rep.values, reverse=True)
    assert rep.min_value == rep.values[-1] == rep.delta_lower_plus_1


def test_endpoint_concave():
    rep = endpoint_minimum_check(FanoParameters(12, 4, (3,)))
    assert rep.concavity == HOLDS and rep.endpoint_min_holds == HOLDS
    v = rep.values
    assert all(v[k + 1] - 2 * v[k] + v[k - 1] <= 0 for k in range(1, len(v) - 1))


def test_endpoint_quadric_negative_delta_not_applicable():
    p = FanoParameters(4, 2, (2,))
    assert derived_constants(p).delta_lower < 0
    rep = endpoint_minimum_check(p)
    assert rep.endpoint_min_holds == rep.decreasing == NOT_APPLICABLE


def test_endpoint_sweep_has_no_failures():
    for p in sweep_parameters(14, 5, 3, 6):
        rep = endpoint_minimum_check(p)
        assert rep.failures == []
        if derived_constants(p).delta_lower >= 0:
            assert rep.min_value == rep.delta_lower_plus_1
            assert rep.endpoint_min_holds == HOLDS
        assert rep.endpoint_min_holds != FAILS


def test_sweep_parameters_shape():
    packs_ = list(sweep_parameters(14, 5, 3, 6))
    assert len(packs_) == len(set(packs_)) == 4070
    assert all(p.r <= min(5, p.n) and list(p.d) == sorted(p.d) for p in packs_)
