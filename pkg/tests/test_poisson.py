import random

import pytest
from hypothesis import given, strategies as st

from algebroids import fixtures as fx
from algebroids.lie import check_lie_axioms, differential, direct_sum_line, schouten_bracket, tangent_algebroid
from algebroids.linalg import SingularMatrixError
from algebroids.poisson import (
    JacobiAlgebroid,
    JacobiPair,
    build_dual_jacobi,
    build_dual_lie,
    dual_bracket_pi,
    dual_bracket_pi_phi0,
    half_pi_pi_identity,
    jacobi_defect,
    jacobi_pair_check,
    pack_jacobi_pair,
    pi_sharp,
    poisson_defect,
    symplectic_from_poisson,
    twisted_differential,
    twisted_half_pi_pi_identity,
    twisted_schouten,
    unit_line_cosection,
)
from algebroids.scalar import Scalar
from algebroids.tensors import Cosection, Multisection, Section, interior_product, pair

from strategies import bivectors, cosections, polynomials, seeds

x, y = Scalar.var("x"), Scalar.var("y")
TM2 = tangent_algebroid(("x", "y"))
TM3 = tangent_algebroid(("x", "y", "z"))
DXDY = Multisection(2, 2, {(0, 1): 1})


def dform(rank, i, c=1):
    return Cosection(rank, 1, {(i,): c})


def test_pi_sharp_examples():
    assert pi_sharp(DXDY, dform(2, 0)) == Section((0, 1))
    assert pi_sharp(DXDY, dform(2, 1)) == Section((-1, 0))


@given(bivectors(3), cosections(3))
def test_pi_sharp_is_antisymmetric(P, xi):
    assert pair(xi, pi_sharp(P, xi)).is_zero()


def test_poisson_defect_examples():
    assert poisson_defect(TM2, DXDY).is_zero()
    assert poisson_defect(TM2, Multisection(2, 2, {(0, 1): x})).is_zero()
    _, P = fx.contact_r3()
    defect = poisson_defect(TM3, P.Lambda)
    assert not defect.is_zero()
    # standard-convention Schouten: [L, L] = -2 E ^ L
    assert defect == Multisection(3, 3, {(0, 1, 2): -2})


def test_dual_bracket_examples():
    assert dual_bracket_pi(TM2, DXDY, dform(2, 0), dform(2, 1)).is_zero()
    assert dual_bracket_pi(TM2, DXDY, dform(2, 0, x), dform(2, 1)) == dform(2, 0)


@given(bivectors(2), cosections(2))
def test_dual_bracket_of_equal_forms_vanishes(P, xi):
    assert dual_bracket_pi(TM2, P, xi, xi).is_zero()


def test_half_pi_pi_on_contact_and_zero():
    _, P = fx.contact_r3()
    assert half_pi_pi_identity(TM3, P.Lambda).ok
    assert half_pi_pi_identity(TM2, Multisection(2, 2, {})).ok


@given(bivectors(2))
def test_half_pi_pi_identity_on_plane(P):
    assert half_pi_pi_identity(TM2, P).ok


def test_build_dual_lie():
    assert check_lie_axioms(build_dual_lie(TM2, DXDY)).ok
    _, P = fx.contact_r3()
    assert not check_lie_axioms(build_dual_lie(TM3, P.Lambda)).ok
    zero_dual = build_dual_lie(TM2, Multisection(2, 2, {}))
    assert all(c.is_zero() for row in zero_dual.bundle.anchor for c in row)


def test_symplectic_from_poisson():
    assert symplectic_from_poisson(TM2, DXDY) == Cosection(2, 2, {(0, 1): 1})
    P = Multisection(2, 2, {(0, 1): 1 + x * x})
    w = symplectic_from_poisson(TM2, P)
    assert differential(TM2, w).is_zero()
    with pytest.raises(SingularMatrixError):
        symplectic_from_poisson(TM3, Multisection(3, 2, {(0, 1): 1}))


@given(cosections(2))
def test_symplectic_flat_inverts_sharp(xi):
    P = Multisection(2, 2, {(0, 1): 1 + x * x + y * y})
    w = symplectic_from_poisson(TM2, P)
    assert interior_product(pi_sharp(P, xi), w) == -xi


# ---------------------------------------------------------------- Jacobi side


def contact_jacobi():
    L, P = fx.contact_r3()
    J = JacobiAlgebroid(direct_sum_line(L), unit_line_cosection(4))
    return J, pack_jacobi_pair(P)


def test_twisted_reductions():
    J0 = JacobiAlgebroid(TM2, Cosection(2, 1, {}))
    P, Q = Multisection(2, 2, {(0, 1): x * y}), Section((y, x))
    assert twisted_schouten(J0, P, Q) == schouten_bracket(TM2, P, Q)
    w = dform(2, 0, y)
    assert twisted_differential(J0, w) == differential(TM2, w)


def test_twisted_schouten_on_sections_is_the_bracket():
    J = JacobiAlgebroid(TM2, dform(2, 0, 1))
    X, Y = Section((x, 1)), Section((y * y, x))
    assert twisted_schouten(J, X, Y) == schouten_bracket(TM2, X, Y)


def test_jacobi_defect_examples():
    J0 = JacobiAlgebroid(TM2, Cosection(2, 1, {}))
    assert jacobi_defect(J0, DXDY).is_zero()
    J, Pi = contact_jacobi()
    assert jacobi_defect(J, Pi).is_zero()
    rng = random.Random(7)
    L, cocycles = fx.lie_fixtures()["TM_R2+R"]
    Jr = JacobiAlgebroid(L, fx.random_closed_phi0(rng, L, cocycles, 2))
    assert not jacobi_defect(Jr, fx.random_bivector(rng, 3, L.base_vars, 2, zero_prob=0)).is_zero()


def test_jacobi_pair_check_examples():
    assert jacobi_pair_check(TM2, JacobiPair(DXDY, Section.zero(2))).ok
    assert jacobi_pair_check(TM2, JacobiPair(DXDY, Section((1, 0)))).ok
    L, P = fx.contact_r3()
    assert jacobi_pair_check(L, P).ok
    assert not jacobi_pair_check(L, JacobiPair(P.Lambda, Section.zero(3))).ok


def test_dual_jacobi():
    J, Pi = contact_jacobi()
    D = build_dual_jacobi(J, Pi)
    assert check_lie_axioms(D.lie).ok
    assert differential(D.lie, D.phi0).is_zero()
    J0 = JacobiAlgebroid(TM2, Cosection(2, 1, {}))
    a, b = dform(2, 0, x), dform(2, 1, y)
    assert dual_bracket_pi_phi0(J0, DXDY, a, b) == dual_bracket_pi(TM2, DXDY, a, b)
    Dz = build_dual_jacobi(JacobiAlgebroid(TM2, dform(2, 0)), Multisection(2, 2, {}))
    assert Dz.phi0.is_zero() or all(c.is_zero() for c in Dz.phi0.as_list())


@given(seeds)
def test_twisted_half_pi_pi_identity(seed):
    rng = random.Random(seed)
    name = rng.choice(sorted(fx.lie_fixtures()))
    L, cocycles = fx.lie_fixtures()[name]
    J = JacobiAlgebroid(L, fx.random_closed_phi0(rng, L, cocycles, 2))
    assert twisted_half_pi_pi_identity(J, fx.random_bivector(rng, L.rank, L.base_vars, 2)).ok
