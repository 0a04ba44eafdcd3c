import pytest
from hypothesis import given, strategies as st

from algebroids import fixtures as fx
from algebroids.defects import StructureError
from algebroids.lie import (
    AnchoredBundle,
    Connection,
    LieAlgebroid,
    anchor_apply,
    check_lie_axioms,
    differential,
    direct_sum_line,
    lie_bracket,
    lie_derivative,
    presymplectic_check,
    schouten_bracket,
    symplectic_check,
    tangent_algebroid,
    zero_table,
)
from algebroids.scalar import Scalar
from algebroids.tensors import Cosection, Multisection, Section, evaluate, interior_product, pair

from strategies import bivectors, cosections, polynomials, sections

x, y, z = Scalar.var("x"), Scalar.var("y"), Scalar.var("z")
TM1 = tangent_algebroid(("x",))
TM2 = tangent_algebroid(("x", "y"))
TM3 = tangent_algebroid(("x", "y", "z"))
FIXTURES = {name: L for name, (L, _) in fx.lie_fixtures().items()}


def point_algebra(rank, entries):
    table = [[[0] * rank for _ in range(rank)] for _ in range(rank)]
    for (i, j, k), c in entries.items():
        table[i][j][k] = c
        table[j][i][k] = -c
    return LieAlgebroid(AnchoredBundle((), rank, [[] for _ in range(rank)]), table)


def biv(coeffs, rank=2):
    return Multisection(rank, 2, coeffs)


# ---------------------------------------------------------------- examples


def test_anchor_apply_examples():
    assert anchor_apply(TM1, Section((1,)), x * x) == 2 * x
    assert anchor_apply(TM2.bundle, Section.zero(2), x * y).is_zero()
    line = direct_sum_line(TM1)
    assert anchor_apply(line.bundle, Section((0, 1)), x * x).is_zero()


def test_lie_bracket_examples():
    assert lie_bracket(TM1, Section((x,)), Section((1,))) == Section((-1,))
    X = Section((x * y, y))
    assert lie_bracket(TM2, X, X).is_zero()
    line = direct_sum_line(TM1)
    g = x**3 + x
    assert lie_bracket(line, Section((1, 0)), Section((0, g))) == Section((0, 3 * x * x + 1))


def test_direct_sum_line_examples():
    line = direct_sum_line(TM1)
    assert line.rank == 2
    assert lie_bracket(line, Section((1, 0)), Section((0, 1))).is_zero()
    assert lie_bracket(line, Section((0, x)), Section((0, x * x))).is_zero()
    assert lie_bracket(line, Section((1, 0)), Section((0, x))) == Section((0, 1))


@pytest.mark.parametrize(
    "L",
    [
        TM2,
        point_algebra(2, {(0, 1, 0): 1}),
        point_algebra(3, {(0, 1, 2): 1, (1, 2, 0): 1, (0, 2, 1): -1}),
        fx.action_rank3(),
    ],
    ids=["TM_R2", "aff1", "so3", "action_rank3"],
)
def test_valid_lie_algebroids(L):
    assert check_lie_axioms(L).ok


def test_bad_jacobi_detected():
    # e0 -> d/dx with [e0, e1] = x e1 over R, but anchor(e1) = d/dx breaks the morphism
    one, zero = Scalar.one(), Scalar.zero()
    L = LieAlgebroid(AnchoredBundle(("x",), 2, [[one], [one]]), [[[0, 0], [0, x]], [[0, -x], [0, 0]]])
    report = check_lie_axioms(L)
    assert not report.ok
    assert "anchor_morphism" in report.failing()


def test_checked_raises_on_invalid():
    L = point_algebra(3, {(0, 1, 0): 1, (1, 2, 1): 1, (0, 2, 2): 1})
    if check_lie_axioms(L).ok:
        pytest.skip("candidate happens to be valid")
    with pytest.raises(StructureError):
        LieAlgebroid.checked(L.bundle, L.table)


def test_wrong_table_shape():
    with pytest.raises(ValueError):
        LieAlgebroid(TM2.bundle, zero_table(3))


def test_schouten_examples():
    B = biv({(0, 1): 1})
    assert schouten_bracket(TM2, B, B).is_zero()
    assert schouten_bracket(TM2, biv({(0, 1): x}), B).is_zero()
    X, Y = Section((x * y, 1)), Section((y, x * x))
    assert schouten_bracket(TM2, X, Y) == Multisection.from_section(lie_bracket(TM2, X, Y))


def test_differential_examples():
    f = x**3
    assert differential(TM1, f) == Cosection(1, 1, {(0,): 3 * x * x})
    assert differential(TM2, Cosection(2, 1, {(0,): 1})).is_zero()
    assert differential(TM2, Cosection(2, 1, {(0,): y})) == Cosection(2, 2, {(0, 1): -1})


def test_lie_derivative_examples():
    assert lie_derivative(TM1, Section((1,)), Cosection(1, 1, {(0,): x})) == Cosection(1, 1, {(0,): 1})
    X = Section((x, y))
    assert lie_derivative(TM2, X, X).is_zero()
    Lam = Multisection(3, 2, {(0, 1): 1, (2, 1): y})
    assert lie_derivative(TM3, Section((0, 0, 1)), Lam).is_zero()


def test_symplectic_examples():
    assert symplectic_check(TM2, Cosection(2, 2, {(0, 1): 1})).ok
    w = Cosection(2, 2, {(0, 1): x})
    assert presymplectic_check(TM2, w).ok and symplectic_check(TM2, w).ok
    w3 = Cosection(3, 2, {(0, 1): z})
    assert not presymplectic_check(TM3, w3).ok
    assert not symplectic_check(TM2, Cosection(2, 2, {})).ok


def test_flat_connection_and_dual():
    C = Connection(TM2, zero_table(2))
    assert C.is_torsion_free() and C.is_flat()
    g = [[Scalar.const(2), Scalar.one()], [Scalar.one(), Scalar.const(3)]]
    dual = C.dual_connection(g)
    assert all(c.is_zero() for row in dual.table for col in row for c in col)


# ---------------------------------------------------------------- properties

lie_fixture = st.sampled_from(sorted(FIXTURES))


@st.composite
def fixture_with_sections(draw, count=2):
    L = FIXTURES[draw(lie_fixture)]
    return (L,) + tuple(draw(sections(L.rank, L.base_vars)) for _ in range(count))


@given(fixture_with_sections(3))
def test_jacobi_identity_on_sections(data):
    L, X, Y, Z = data
    br = lambda a, b: lie_bracket(L, a, b)
    jac = br(X, br(Y, Z)) + br(Y, br(Z, X)) + br(Z, br(X, Y))
    assert jac.is_zero()


@given(fixture_with_sections(2), st.data())
def test_leibniz_rule(data, draw):
    L, X, Y = data
    f = draw.draw(polynomials(L.base_vars))
    lhs = lie_bracket(L, X, Y * f)
    rhs = lie_bracket(L, X, Y) * f + Y * anchor_apply(L.bundle, X, f)
    assert lhs == rhs


@given(fixture_with_sections(2), st.data())
def test_anchor_is_a_morphism(data, draw):
    L, X, Y = data
    f = draw.draw(polynomials(L.base_vars))
    A = L.bundle
    lhs = anchor_apply(A, lie_bracket(L, X, Y), f)
    rhs = anchor_apply(A, X, anchor_apply(A, Y, f)) - anchor_apply(A, Y, anchor_apply(A, X, f))
    assert lhs == rhs


@given(st.data())
def test_d_squared_vanishes(data):
    L = FIXTURES[data.draw(lie_fixture)]
    for k in range(L.rank - 1):
        w = data.draw(cosections(L.rank, k, L.base_vars) if k else polynomials(L.base_vars).map(
            lambda f: Cosection.scalar(L.rank, f)))
        assert differential(L, differential(L, w)).is_zero()


@given(fixture_with_sections(2), st.data())
def test_differential_of_one_form(data, draw):
    L, X, Y = data
    w = draw.draw(cosections(L.rank, 1, L.base_vars))
    A = L.bundle
    expected = anchor_apply(A, X, pair(w, Y)) - anchor_apply(A, Y, pair(w, X)) - pair(w, lie_bracket(L, X, Y))
    assert evaluate(differential(L, w), X, Y) == expected


@given(fixture_with_sections(2), st.data())
def test_lie_derivative_of_one_form(data, draw):
    L, X, Y = data
    w = draw.draw(cosections(L.rank, 1, L.base_vars))
    expected = anchor_apply(L.bundle, X, pair(w, Y)) - pair(w, lie_bracket(L, X, Y))
    assert pair(lie_derivative(L, X, w), Y) == expected


@given(st.data())
def test_schouten_graded_antisymmetry(data):
    L = FIXTURES[data.draw(lie_fixture)]
    P = data.draw(bivectors(L.rank, L.base_vars))
    X = data.draw(sections(L.rank, L.base_vars))
    # [X, P] = -(-1)^{0*1}[P, X]
    assert schouten_bracket(L, X, P) == -schouten_bracket(L, P, X)
    assert schouten_bracket(L, X, P) == lie_derivative(L, X, P)


@given(st.data())
def test_schouten_of_bivectors_is_symmetric(data):
    L = FIXTURES[data.draw(lie_fixture)]
    P = data.draw(bivectors(L.rank, L.base_vars))
    Q = data.draw(bivectors(L.rank, L.base_vars))
    # degrees (2, 2): [P, Q] = -(-1)^{1*1}[Q, P] = [Q, P]
    assert schouten_bracket(L, P, Q) == schouten_bracket(L, Q, P)


@given(st.data())
def test_schouten_derivation_rule(data):
    L = FIXTURES[data.draw(lie_fixture)]
    X, Y, Z = (data.draw(sections(L.rank, L.base_vars)) for _ in range(3))
    from algebroids.tensors import wedge

    m = Multisection.from_section
    lhs = schouten_bracket(L, X, wedge(m(Y), m(Z)))
    rhs = wedge(m(lie_bracket(L, X, Y)), m(Z)) + wedge(m(Y), m(lie_bracket(L, X, Z)))
    assert lhs == rhs
