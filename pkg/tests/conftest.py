import random

import pytest
from hypothesis import strategies as st

from fanostrata.fields import GF, QQ
from fanostrata.forms import Form, FormTuple, monomials


@pytest.fixture
def rng():
    return random.Random(20241015)


@st.composite
def forms(draw, n=None, degree=None, field=QQ, max_n=3, max_degree=3):
    n = draw(st.integers(1, max_n)) if n is None else n
    degree = draw(st.integers(1, max_degree)) if degree is None else degree
    mons = monomials(n + 1, degree)
    coeff = st.integers(0, field.p - 1) if field.p else st.integers(-4, 4)
    chosen = draw(st.lists(st.tuples(st.sampled_from(mons), coeff), max_size=6))
    return Form.from_dict(n, degree, dict(chosen), field)


@st.composite
def form_tuples(draw, field=QQ, max_n=3, max_degree=3, max_s=2, n=None):
    n = draw(st.integers(1, max_n)) if n is None else n
    s = draw(st.integers(1, max_s))
    degrees = [draw(st.integers(1, max_degree)) for _ in range(s)]
    return FormTuple(tuple(draw(forms(n=n, degree=d, field=field)) for d in degrees))


def covectors(n, field=QQ):
    coeff = st.integers(0, field.p - 1) if field.p else st.integers(-4, 4)
    return st.lists(coeff, min_size=n + 1, max_size=n + 1)


F5, F7 = GF(5), GF(7)
