"""Frozen fixtures and seeded random generators.

Random instances stay small on purpose: rank at most 3, base dimension at
most 2, coefficient degree at most ``max_degree``.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Sequence

from .linalg import det
from .lie import AnchoredBundle, Connection, LieAlgebroid, differential, direct_sum_line, tangent_algebroid
from .jlsa import JacobiLSA
from .lsa import Cochain, LeftSymmetricAlgebroid, SymmetricBivector, lsa_bar_nabla, lsa_from_connection
from .manifold import AffinePatch, JKVPair
from .poisson import JacobiAlgebroid, JacobiPair, unit_line_cosection
from .scalar import Scalar
from .tensors import Cosection, Multisection, Section

__all__ = [
    "random_poly",
    "random_section",
    "random_cosection",
    "random_bivector",
    "random_symmetric",
    "random_cochain",
    "random_metric",
    "random_closed_phi0",
    "random_candidate_lie",
    "random_candidate_lsa",
    "tm",
    "action_rank3",
    "lie_fixtures",
    "lsa_fixtures",
    "jacobi_fixtures",
    "jlsa_fixtures",
    "flat_patch_2d",
    "contact_r3",
    "jkv_1d",
    "jkv_only_i",
    "jkv_only_ii",
    "jkv_only_iii",
    "jkv_family_1d",
]

_COEFFS = [-3, -2, -1, 1, 2, 3, Fraction(1, 2), Fraction(-1, 3)]


def _monomials(variables: Sequence[str], max_degree: int) -> list[tuple[int, ...]]:
    n = len(variables)
    return [e for e in itertools.product(range(max_degree + 1), repeat=n) if sum(e) <= max_degree]


def random_poly(rng: random.Random, variables: Sequence[str], max_degree: int, terms: int = 3,
                zero_prob: float = 0.0) -> Scalar:
    """Sum of up to ``terms`` random monomials with small rational coefficients."""
    if zero_prob and rng.random() < zero_prob:
        return Scalar.zero()
    monos = _monomials(variables, max_degree)
    total = Scalar.const(0, variables)
    for e in rng.sample(monos, min(len(monos), rng.randint(1, terms))):
        m = Scalar.const(rng.choice(_COEFFS), variables)
        for v, k in zip(variables, e):
            if k:
                m = m * Scalar.var(v, variables) ** k
        total = total + m
    return total


def random_section(rng, rank, variables, max_degree, zero_prob=0.3) -> Section:
    return Section(tuple(random_poly(rng, variables, max_degree, zero_prob=zero_prob) for _ in range(rank)))


def random_cosection(rng, rank, degree, variables, max_degree, zero_prob=0.3) -> Cosection:
    coeffs = {
        idx: random_poly(rng, variables, max_degree, zero_prob=zero_prob)
        for idx in itertools.combinations(range(rank), degree)
    }
    return Cosection(rank, degree, coeffs)


def random_bivector(rng, rank, variables, max_degree, zero_prob=0.3) -> Multisection:
    coeffs = {
        idx: random_poly(rng, variables, max_degree, zero_prob=zero_prob)
        for idx in itertools.combinations(range(rank), 2)
    }
    return Multisection(rank, 2, coeffs)


def random_symmetric(rng, rank, variables, max_degree, zero_prob=0.3) -> SymmetricBivector:
    m = [[None] * rank for _ in range(rank)]
    for i in range(rank):
        for j in range(i, rank):
            m[i][j] = m[j][i] = random_poly(rng, variables, max_degree, zero_prob=zero_prob)
    return SymmetricBivector(tuple(tuple(r) for r in m))


def random_metric(rng, n, variables, max_degree) -> SymmetricBivector:
    """Random symmetric matrix plus a constant diagonal shift, redrawn until the determinant is nonzero."""
    while True:
        h = random_symmetric(rng, n, variables, max_degree)
        m = [list(r) for r in h.matrix]
        for i in range(n):
            m[i][i] = m[i][i] + rng.choice([1, 2, 3])
        if not det(m).is_zero():
            return SymmetricBivector(tuple(tuple(r) for r in m))


def random_cochain(rng, rank, degree, variables, max_degree, zero_prob=0.4) -> Cochain:
    """Random element of ``C^degree``; keys ``(I, j)`` with ``|I| = degree - 1``."""
    coeffs = {}
    for I in itertools.combinations(range(rank), degree - 1):
        for j in range(rank):
            coeffs[(I, j)] = random_poly(rng, variables, max_degree, zero_prob=zero_prob)
    return Cochain(rank, degree, coeffs)


def random_closed_phi0(rng, L: LieAlgebroid, cocycles: Sequence[Cosection], max_degree: int) -> Cosection:
    """``d f`` plus a random rational combination of known 1-cocycles."""
    f = random_poly(rng, L.base_vars, max_degree)
    phi = differential(L, Cosection.scalar(L.rank, f))
    for c in cocycles:
        phi = phi + c * Scalar.const(rng.choice(_COEFFS))
    return phi


def _random_anchor(rng, rank, variables, max_degree):
    return [[random_poly(rng, variables, max_degree, zero_prob=0.4) for _ in variables] for _ in range(rank)]


def _random_table(rng, rank, variables, max_degree, skew: bool):
    z = Scalar.zero()
    t = [[[z] * rank for _ in range(rank)] for _ in range(rank)]
    for i in range(rank):
        for j in range(rank):
            if skew and j <= i:
                continue
            for k in range(rank):
                t[i][j][k] = random_poly(rng, variables, max_degree, zero_prob=0.5)
            if skew:
                t[j][i] = [-v for v in t[i][j]]
    return t


def random_candidate_lie(rng, max_degree: int) -> LieAlgebroid:
    """Arbitrary antisymmetric table and anchor (generally not a Lie algebroid)."""
    n, r = rng.randint(1, 2), rng.randint(1, 3)
    variables = ("x", "y")[:n]
    bundle = AnchoredBundle(variables, r, _random_anchor(rng, r, variables, max_degree))
    return LieAlgebroid(bundle, _random_table(rng, r, variables, max_degree, skew=True))


def random_candidate_lsa(rng, max_degree: int) -> LeftSymmetricAlgebroid:
    n, r = rng.randint(1, 2), rng.randint(1, 3)
    variables = ("x", "y")[:n]
    bundle = AnchoredBundle(variables, r, _random_anchor(rng, r, variables, max_degree))
    return LeftSymmetricAlgebroid(bundle, _random_table(rng, r, variables, max_degree, skew=False))


# ---------------------------------------------------------------- frozen

def tm(n: int) -> LieAlgebroid:
    return tangent_algebroid(("x", "y", "z")[:n])


def action_rank3() -> LieAlgebroid:
    """Action algebroid of ``aff(1) + R`` on the plane.

    ``e0 -> d/dx``, ``e1 -> x d/dx``, ``e2 -> d/dy``, ``[e0, e1] = e0``.
    """
    x = Scalar.var("x")
    one, z = Scalar.one(), Scalar.zero()
    anchor = [[one, z], [x, z], [z, one]]
    table = [[[z] * 3 for _ in range(3)] for _ in range(3)]
    table[0][1] = [one, z, z]
    table[1][0] = [-one, z, z]
    return LieAlgebroid(AnchoredBundle(("x", "y"), 3, anchor), table)


def lie_fixtures() -> dict[str, tuple[LieAlgebroid, list[Cosection]]]:
    """Validated Lie algebroids with a list of known closed 1-cosections."""
    tm2 = tm(2)
    line1 = direct_sum_line(tm(1))
    line2 = direct_sum_line(tm2)
    A = action_rank3()
    e = lambda r, a: Cosection(r, 1, {(a,): 1})
    return {
        "TM_R2": (tm2, [e(2, 0), e(2, 1)]),
        "TM_R1+R": (line1, [e(2, 1), e(2, 0)]),
        "TM_R2+R": (line2, [e(3, 2), e(3, 0)]),
        "action_rank3": (A, [e(3, 1), e(3, 2)]),
    }


def flat_patch_2d() -> AffinePatch:
    """``nabla_{d_x} d_x = d_x``, all other symbols zero (flat and torsion-free)."""
    z, one = Scalar.zero(), Scalar.one()
    gamma = [[[one, z], [z, z]], [[z, z], [z, z]]]
    return AffinePatch(("x", "y"), gamma)


def lsa_fixtures() -> dict[str, tuple[LeftSymmetricAlgebroid, list[Cosection]]]:
    """Validated left-symmetric algebroids with known ``delta``-symmetric 1-cosections."""
    e = lambda r, a: Cosection(r, 1, {(a,): 1})
    flat2 = AffinePatch(("x", "y"))
    curved = flat_patch_2d()
    one = AffinePatch(("x",))
    bar1 = lsa_bar_nabla(one.tangent, one.connection)
    bar2 = lsa_bar_nabla(flat2.tangent, flat2.connection)
    return {
        "TM_R2_flat": (flat2.lsa(), [e(2, 0), e(2, 1)]),
        "TM_R2_gamma": (curved.lsa(), [e(2, 1)]),
        "barnabla_R1": (bar1, [e(2, 1), e(2, 0)]),
        "barnabla_R2": (bar2, [e(3, 2), e(3, 1)]),
    }


def jacobi_fixtures(rng, max_degree: int) -> dict[str, JacobiAlgebroid]:
    out = {}
    for name, (L, cocycles) in lie_fixtures().items():
        out[name] = JacobiAlgebroid(L, random_closed_phi0(rng, L, cocycles, max_degree))
    return out


def jlsa_fixtures(rng, max_degree: int) -> dict[str, JacobiLSA]:
    out = {}
    for name, (S, cocycles) in lsa_fixtures().items():
        out[name] = JacobiLSA(S, random_closed_phi0(rng, S.commutator(), cocycles, max_degree))
    return out


def contact_r3() -> tuple[LieAlgebroid, JacobiPair]:
    """``Lambda = (d/dx + y d/dz) ^ d/dy``, ``E = d/dz`` on ``R^3``."""
    y = Scalar.var("y")
    Lam = Multisection(3, 2, {(0, 1): 1, (2, 1): y})
    E = Section((Scalar.zero(), Scalar.zero(), Scalar.one()))
    return tm(3), JacobiPair(Lam, E)


def jkv_1d() -> tuple[AffinePatch, JKVPair]:
    """``h = -x d/dx (x) d/dx``, ``E = d/dx`` on ``R`` with zero Christoffel symbols."""
    x = Scalar.var("x")
    return AffinePatch(("x",)), JKVPair(SymmetricBivector(((-x,),)), Section((Scalar.one(),)))


def jkv_only_ii() -> tuple[AffinePatch, JKVPair]:
    """``h = x^2``, ``E = d/dx``: (ii) fails, (i) and (iii) hold."""
    x = Scalar.var("x")
    return AffinePatch(("x",)), JKVPair(SymmetricBivector(((x * x,),)), Section((Scalar.one(),)))


def jkv_only_iii() -> tuple[AffinePatch, JKVPair]:
    """``h = -x^2``, ``E = x d/dx``: (iii) fails, (i) and (ii) hold."""
    x = Scalar.var("x")
    return AffinePatch(("x",)), JKVPair(SymmetricBivector(((-x * x,),)), Section((x,)))


def jkv_only_i() -> tuple[AffinePatch, JKVPair]:
    """``h = diag(1, x)``, ``E = 0`` on the flat plane: only (i) fails."""
    x = Scalar.var("x", ("x", "y"))
    h = SymmetricBivector(((1, 0), (0, x)))
    return AffinePatch(("x", "y")), JKVPair(h, Section.zero(2))


def jkv_family_1d(rng) -> tuple[AffinePatch, JKVPair]:
    """``h = k - c x``, ``E = c d/dx`` solves (i)-(iii) for rational ``k, c``."""
    x = Scalar.var("x")
    c = Scalar.const(rng.choice(_COEFFS))
    k = Scalar.const(rng.choice(_COEFFS))
    return AffinePatch(("x",)), JKVPair(SymmetricBivector(((k - c * x,),)), Section((c,)))
