import random

from hypothesis import settings, strategies as st

from purisheaf.exactlinear import GF, POLY_U, QQ, Poly, RingMatrix

settings.register_profile("default", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("default")

FIELDS = [QQ, GF(5), GF(7)]


def field_elements(field, bound=4):
    return st.integers(-bound, bound).map(field)


@st.composite
def polys(draw, field=QQ, ring=POLY_U, max_degree=3, bound=3):
    coeffs = draw(st.lists(st.integers(-bound, bound), min_size=0, max_size=max_degree + 1))
    return Poly.from_list(field, ring, [field(c) for c in coeffs])


@st.composite
def poly_matrices(draw, field=QQ, ring=POLY_U, max_rows=3, max_cols=3, max_degree=2):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    entries = [[draw(polys(field, ring, max_degree)) for _ in range(c)] for _ in range(r)]
    return RingMatrix(field, ring, r, c, entries)


def seeded(seed):
    return random.Random(seed)
