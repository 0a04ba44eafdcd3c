"""Hypothesis strategies for exact scalars and small tensors."""

from fractions import Fraction

from hypothesis import strategies as st

from algebroids.scalar import Scalar
from algebroids.tensors import Cosection, Multisection, Section
from algebroids.lsa import SymmetricBivector

VARS2 = ("x", "y")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def polynomials(draw, variables=VARS2, max_degree=2, max_terms=3):
    total = Scalar.zero()
    for _ in range(draw(st.integers(0, max_terms))):
        term = Scalar.const(draw(rationals), variables)
        for v in variables:
            k = draw(st.integers(0, max_degree))
            if k:
                term = term * Scalar.var(v, variables) ** k
        total = total + term
    return total


@st.composite
def exp_polynomials(draw, variables=("x", "t"), bands=(-2, -1, 0, 1)):
    """Sums of ``p_k(x) e^{k t}`` over a few bands."""
    total = Scalar.zero()
    for k in draw(st.lists(st.sampled_from(bands), max_size=3, unique=True)):
        total = total + draw(polynomials(("x",), 2, 2)) * Scalar.exp(k, variables)
    return total


@st.composite
def fractions_of_polys(draw, variables=VARS2):
    """``p / q`` with a nonzero monic-ish denominator."""
    p = draw(polynomials(variables))
    q = draw(polynomials(variables, max_degree=1, max_terms=2))
    if q.is_zero():
        q = Scalar.one()
    return p * q.inverse()


def sections(rank, variables=VARS2):
    return st.tuples(*[polynomials(variables) for _ in range(rank)]).map(Section)


def cosections(rank, degree=1, variables=VARS2):
    import itertools

    keys = list(itertools.combinations(range(rank), degree))
    return st.tuples(*[polynomials(variables) for _ in keys]).map(
        lambda vals: Cosection(rank, degree, dict(zip(keys, vals)))
    )


def bivectors(rank, variables=VARS2):
    import itertools

    keys = list(itertools.combinations(range(rank), 2))
    return st.tuples(*[polynomials(variables) for _ in keys]).map(
        lambda vals: Multisection(rank, 2, dict(zip(keys, vals)))
    )


@st.composite
def symmetric(draw, rank, variables=VARS2):
    m = [[None] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i, rank):
            m[i][j] = m[j][i] = draw(polynomials(variables, max_degree=1))
    return SymmetricBivector(tuple(tuple(r) for r in m))


seeds = st.integers(min_value=0, max_value=2**32 - 1)
small_fraction = st.builds(Fraction, st.integers(-4, 4), st.integers(1, 4))
