import random

from hypothesis import given, strategies as st

from algebroids import fixtures as fx
from algebroids.jlsa import (
    JacobiLSA,
    build_dual_jlsa,
    cocycle_symmetry_report,
    dual_jlsa_report,
    jkv_bracket,
    twisted_dual_product,
    twisted_dual_product_definitional,
    twisted_leibniz_report,
    twisted_product_forms_report,
    twisted_sharp_identity,
)
from algebroids.lie import differential
from algebroids.lsa import (
    LeftSymmetricAlgebroid,
    SymmetricBivector,
    build_dual_lsa,
    check_lsa_axioms,
    dual_product,
    kv_bracket,
    sharp_compat_identity,
)
from algebroids.manifold import AffinePatch, pack_H
from algebroids.scalar import Scalar
from algebroids.tensors import Cosection

from strategies import cosections, polynomials, seeds, symmetric

x, y = Scalar.var("x"), Scalar.var("y")
FLAT2 = AffinePatch(("x", "y")).lsa()
ZERO2 = Cosection(2, 1, {})


def test_cocycle_symmetry_trivial():
    assert cocycle_symmetry_report(FLAT2, ZERO2).ok


@given(cosections(2))
def test_cocycle_symmetry_defect_is_d_phi0(phi):
    report = cocycle_symmetry_report(FLAT2, phi)
    assert report.passes("identity_defect")
    assert report.entries["sym_defect"] == differential(FLAT2.commutator(), phi).coeffs


def test_bar_nabla_unit_cosection_is_jlsa():
    J = AffinePatch(("x",)).bar_jlsa()
    assert cocycle_symmetry_report(J.lsa, J.phi0).ok


@given(symmetric(2))
def test_jkv_bracket_reduces_without_phi0(h):
    J = JacobiLSA(FLAT2, ZERO2)
    assert jkv_bracket(J, h).coeffs == kv_bracket(FLAT2, h).coeffs


@given(cosections(2))
def test_jkv_bracket_of_zero(phi):
    assert jkv_bracket(JacobiLSA(FLAT2, phi), SymmetricBivector.zero(2)).is_zero()


def test_jkv_bracket_of_packed_1d_fixture():
    P, pair = fx.jkv_1d()
    assert jkv_bracket(P.bar_jlsa(), pack_H(pair)).is_zero()


@given(symmetric(2), cosections(2), cosections(2))
def test_twisted_dual_product_reduces(h, a, b):
    J = JacobiLSA(FLAT2, ZERO2)
    assert twisted_dual_product(J, h, a, b) == dual_product(FLAT2, h, a, b)


@given(cosections(2), cosections(2), cosections(2))
def test_twisted_dual_product_with_zero_h(phi, a, b):
    J = JacobiLSA(FLAT2, phi)
    assert twisted_dual_product(J, SymmetricBivector.zero(2), a, b).is_zero()


@given(symmetric(2), cosections(2), cosections(2), cosections(2))
def test_closed_and_definitional_forms_agree(h, phi, a, b):
    J = JacobiLSA(FLAT2, phi)
    assert twisted_dual_product(J, h, a, b) == twisted_dual_product_definitional(J, h, a, b)


@given(symmetric(2), cosections(2), cosections(2), polynomials())
def test_twisted_leibniz(h, a, b, f):
    J = JacobiLSA(FLAT2, Cosection(2, 1, {(0,): 1}))
    assert twisted_leibniz_report(J, h, a, b, f).ok


@given(symmetric(2), cosections(2))
def test_twisted_sharp_identity_on_flat_plane(h, phi):
    assert twisted_sharp_identity(JacobiLSA(FLAT2, phi), h).ok


@given(symmetric(2))
def test_twisted_sharp_reduces_to_sharp_compat(h):
    assert twisted_sharp_identity(JacobiLSA(FLAT2, ZERO2), h).ok == sharp_compat_identity(FLAT2, h).ok


@given(seeds)
def test_twisted_sharp_on_random_jlsa(seed):
    rng = random.Random(seed)
    name, J = rng.choice(sorted(fx.jlsa_fixtures(rng, 2).items()))
    h = fx.random_symmetric(rng, J.rank, J.lsa.base_vars, 1)
    assert twisted_sharp_identity(J, h).ok
    assert twisted_product_forms_report(J, h).ok


def test_build_dual_jlsa_zero_h():
    J = JacobiLSA(FLAT2, Cosection(2, 1, {(1,): x}))
    D = build_dual_jlsa(J, SymmetricBivector.zero(2))
    assert all(c.is_zero() for row in D.lsa.table for v in row for c in v)
    assert check_lsa_axioms(D.lsa).ok


def test_build_dual_jlsa_reduces_to_dual_lsa():
    h = SymmetricBivector(((Scalar.const(2), Scalar.one()), (Scalar.one(), Scalar.const(5))))
    D = build_dual_jlsa(JacobiLSA(FLAT2, ZERO2), h)
    assert D.lsa.table == build_dual_lsa(FLAT2, h).table
    assert D.phi0.is_zero() or all(c.is_zero() for c in D.phi0.as_list())


def test_dual_of_packed_1d_fixture():
    P, pair = fx.jkv_1d()
    J, H = P.bar_jlsa(), pack_H(pair)
    report = dual_jlsa_report(J, H)
    assert report.ok
    D = build_dual_jlsa(J, H)
    # distinguished section -h#phi0 = -(E, 0) read in the dual frame
    assert D.phi0 == Cosection(2, 1, {(0,): -1})
