import pytest
from hypothesis import given, strategies as st

from algebroids.scalar import Scalar
from algebroids.tensors import Cosection, Multisection, Section, evaluate, interior_product, pair, sort_sign, wedge

from strategies import bivectors, cosections, sections

x, y = Scalar.var("x"), Scalar.var("y")


def vec(rank, i):
    return Multisection.from_section(Section.basis(rank, i))


def form(rank, i, c=1):
    return Cosection(rank, 1, {(i,): c})


def test_wedge_examples():
    assert wedge(vec(2, 0), vec(2, 0)).is_zero()
    assert wedge(vec(2, 0), vec(2, 1)) == Multisection(2, 2, {(0, 1): 1})
    assert wedge(form(2, 0, x), form(2, 1, y)) == Cosection(2, 2, {(0, 1): x * y})


def test_interior_examples():
    B = Multisection(2, 2, {(0, 1): 1})
    assert interior_product(form(2, 0), B) == vec(2, 1)
    assert interior_product(form(2, 1), B) == Multisection(2, 1, {(0,): -1})
    B3 = Multisection(3, 2, {(0, 1): 1})
    assert interior_product(form(3, 2), B3).is_zero()


def test_unsorted_keys_are_normalized_with_sign():
    assert Multisection(2, 2, {(1, 0): 1}) == Multisection(2, 2, {(0, 1): -1})
    assert Multisection(2, 2, {(1, 1): x}).is_zero()


def test_sort_sign():
    assert sort_sign((1, 0, 2)) == (-1, (0, 1, 2))
    assert sort_sign((2, 0, 1)) == (1, (0, 1, 2))


def test_evaluate_is_alternating():
    w = Cosection(2, 2, {(0, 1): x})
    e0, e1 = Section.basis(2, 0), Section.basis(2, 1)
    assert evaluate(w, e0, e1) == x
    assert evaluate(w, e1, e0) == -x


def test_interior_of_scalar_rejected():
    with pytest.raises(ValueError):
        interior_product(form(2, 0), Multisection(2, 0, {(): 1}))


@given(cosections(3), cosections(3))
def test_wedge_of_one_forms_is_antisymmetric(a, b):
    assert wedge(a, b) == -wedge(b, a)
    assert wedge(a, a).is_zero()


@given(cosections(3), cosections(3), cosections(3))
def test_wedge_associative(a, b, c):
    assert wedge(wedge(a, b), c) == wedge(a, wedge(b, c))


@given(bivectors(3), cosections(3))
def test_double_contraction_vanishes(P, a):
    # contracting a bivector twice with the same form gives zero
    once = interior_product(a, P)
    assert pair(a, once.as_section()).is_zero()


@given(sections(3), cosections(3), cosections(3))
def test_interior_is_a_graded_derivation(X, a, b):
    # i_X(a ^ b) = <a,X> b - <b,X> a
    assert interior_product(X, wedge(a, b)) == b * pair(a, X) - a * pair(b, X)
