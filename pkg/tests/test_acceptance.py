"""Acceptance criteria, one test per criterion, each timed against its budget.

Every criterion records a line ``criterion N: PASS|FAIL ...`` that the
terminal summary prints (see ``conftest.py``). Run this file directly with
``python3 tests/test_acceptance.py`` to get the same lines without pytest.
"""

from __future__ import annotations

import random
import subprocess
import sys
import time

from algebroids import fixtures as fx
from algebroids.jlsa import JacobiLSA, cocycle_symmetry_report, dual_jlsa_report, twisted_product_forms_report, twisted_sharp_identity
from algebroids.lie import check_lie_axioms, differential, direct_sum_line
from algebroids.line import extend_lie, extension_obstruction_report, kv_ize, poissonize
from algebroids.lsa import SymmetricBivector, associator, build_dual_lsa, check_lsa_axioms, coboundary, kv_bracket
from algebroids.manifold import AffinePatch, jkv_defects, jkv_equivalence_report, lch_report, pack_H
from algebroids.poisson import (
    JacobiAlgebroid,
    half_pi_pi_identity,
    jacobi_defect,
    jacobi_pair_check,
    pack_jacobi_pair,
    poisson_defect,
    unit_line_cosection,
)
from algebroids.scalar import Scalar
from algebroids.tensors import Cosection, Section

SEED = 20240601
DEGREE = 2
N = 20
RESULTS: list[str] = []


def _record(number: int, ok: bool, elapsed: float, budget: float, detail: str) -> bool:
    within = elapsed < budget
    verdict = "PASS" if ok and within else "FAIL"
    line = f"criterion {number}: {verdict} ({elapsed:.2f}s of {budget:.0f}s) {detail}"
    RESULTS.append(line)
    print(line)
    return ok and within


def _timed(number: int, budget: float, body) -> None:
    start = time.perf_counter()
    ok, detail = body()
    elapsed = time.perf_counter() - start
    assert _record(number, ok, elapsed, budget, detail), RESULTS[-1]


# ---------------------------------------------------------------- 1


def criterion_1():
    rng = random.Random(f"{SEED}:1")
    fails = 0
    for L in (fx.tm(2), fx.action_rank3()):
        for _ in range(N):
            pi = fx.random_bivector(rng, L.rank, L.base_vars, DEGREE)
            fails += not half_pi_pi_identity(L, pi).ok
    return fails == 0, f"half [pi,pi] identity, {2 * N} bivectors, {fails} failures"


def test_criterion_1_sign_pinning():
    _timed(1, 5, criterion_1)


# ---------------------------------------------------------------- 2


def criterion_2():
    rng = random.Random(f"{SEED}:2")
    fixtures = fx.lsa_fixtures()
    fails = 0
    for S, _ in fixtures.values():
        for _ in range(N):
            phi = fx.random_cosection(rng, S.rank, 1, S.base_vars, DEGREE, zero_prob=0.2)
            fails += not cocycle_symmetry_report(S, phi).passes("identity_defect")
    return fails == 0, f"cocycle identity on {len(fixtures)} LSA fixtures x {N}, {fails} failures"


def test_criterion_2_cocycle_identity():
    _timed(2, 2, criterion_2)


# ---------------------------------------------------------------- 3


def criterion_3():
    rng = random.Random(f"{SEED}:3")
    fixtures = fx.lsa_fixtures()
    fails = 0
    for S, cocycles in fixtures.values():
        for _ in range(N):
            J = JacobiLSA(S, fx.random_closed_phi0(rng, S.commutator(), cocycles, DEGREE))
            h = fx.random_symmetric(rng, S.rank, S.base_vars, DEGREE)
            fails += not (twisted_sharp_identity(J, h).ok and twisted_product_forms_report(J, h).ok)
    return fails == 0, f"twisted sharp identity and product forms, {len(fixtures)} fixtures x {N}, {fails} failures"


def test_criterion_3_twisted_identities():
    _timed(3, 10, criterion_3)


# ---------------------------------------------------------------- 4


def criterion_4():
    rng = random.Random(f"{SEED}:4")
    lie = fx.lie_fixtures()
    lsa = fx.lsa_fixtures()
    fails = 0
    for k in range(N):
        L, cocycles = lie[sorted(lie)[k % len(lie)]]
        J = JacobiAlgebroid(L, fx.random_closed_phi0(rng, L, cocycles, DEGREE))
        _, report = poissonize(J, fx.random_bivector(rng, L.rank, L.base_vars, DEGREE))
        fails += not report.passes("scaling")
    for k in range(N):
        S, cocycles = lsa[sorted(lsa)[k % len(lsa)]]
        J = JacobiLSA(S, fx.random_closed_phi0(rng, S.commutator(), cocycles, DEGREE))
        _, report = kv_ize(J, fx.random_symmetric(rng, S.rank, S.base_vars, DEGREE))
        fails += not report.passes("scaling")
    return fails == 0, f"Poissonization and KV-ization scaling, {N} each, {fails} failures"


def test_criterion_4_scaling():
    _timed(4, 10, criterion_4)


# ---------------------------------------------------------------- 5


def criterion_5():
    x = Scalar.var("x")
    flat2 = AffinePatch(("x", "y")).lsa()
    flat1 = AffinePatch(("x",)).lsa()
    const_h = SymmetricBivector(((Scalar.const(2), Scalar.one()), (Scalar.one(), Scalar.const(3))))
    poly_h = SymmetricBivector(((x**3 - 2 * x + 1,),))
    ok_const = check_lsa_axioms(build_dual_lsa(flat2, const_h)).ok
    ok_poly = check_lsa_axioms(build_dual_lsa(flat1, poly_h)).ok
    P, pair = fx.jkv_1d()
    ok_jkv = dual_jlsa_report(P.bar_jlsa(), pack_H(pair)).ok
    detail = f"constant h {ok_const}, 1-D polynomial h {ok_poly}, packed 1-D JKV {ok_jkv}"
    return ok_const and ok_poly and ok_jkv, detail


def test_criterion_5_duality_positive():
    _timed(5, 5, criterion_5)


# ---------------------------------------------------------------- 6


def criterion_6():
    x, y = Scalar.var("x"), Scalar.var("y")
    flat2 = AffinePatch(("x", "y")).lsa()
    h = SymmetricBivector(((1, 0), (0, x)))
    kv_nonzero = not kv_bracket(flat2, h).is_zero()
    dual = build_dual_lsa(flat2, h)
    # on frame triples the associator is symmetric; the failure shows up on weighted sections
    e0, e1 = Section.basis(2, 0), Section.basis(2, 1)
    skew = associator(dual, e0, e1, e1 * y) - associator(dual, e1, e0, e1 * y)
    assoc_nonzero = not skew.is_zero() and not check_lsa_axioms(dual).ok
    phi = Cosection(2, 1, {(0,): y})
    obstruction = extension_obstruction_report(flat2, phi)
    obstruction_ok = not obstruction.passes("associator_skew") and obstruction.passes("matches_delta_phi0")
    jacobi_nonzero = not check_lie_axioms(extend_lie(flat2.commutator(), phi, "bar")).ok
    detail = (
        f"kv nonzero {kv_nonzero}, dual associator nonzero {assoc_nonzero}, "
        f"extension obstruction matches {obstruction_ok}, extension Jacobi defect nonzero {jacobi_nonzero}"
    )
    return kv_nonzero and assoc_nonzero and obstruction_ok and jacobi_nonzero, detail


def test_criterion_6_duality_negative():
    _timed(6, 5, criterion_6)


# ---------------------------------------------------------------- 7


def criterion_7():
    L, pair = fx.contact_r3()
    pair_ok = jacobi_pair_check(L, pair).ok
    J = JacobiAlgebroid(direct_sum_line(L), unit_line_cosection(4))
    packed = pack_jacobi_pair(pair)
    packed_ok = jacobi_defect(J, packed).is_zero()
    poissonized_ok = poissonize(J, packed)[1].ok
    lambda_fails = not poisson_defect(L, pair.Lambda).is_zero()
    detail = f"pair {pair_ok}, packed {packed_ok}, Poissonization {poissonized_ok}, Lambda alone not Poisson {lambda_fails}"
    return pair_ok and packed_ok and poissonized_ok and lambda_fails, detail


def test_criterion_7_contact():
    _timed(7, 5, criterion_7)


# ---------------------------------------------------------------- 8


def criterion_8():
    P, pair = fx.jkv_1d()
    chain = {
        "jkv": jkv_defects(P, pair).ok,
        "pack-H": jkv_equivalence_report(P, pair).ok,
        "kv-ization": kv_ize(P.bar_jlsa(), pack_H(pair))[1].ok,
        "lch": lch_report(P, pair).ok,
    }
    isolated = {}
    for letter, build in (("i", fx.jkv_only_i), ("ii", fx.jkv_only_ii), ("iii", fx.jkv_only_iii)):
        Q, bad = build()
        packed = jkv_equivalence_report(Q, bad)
        isolated[letter] = jkv_defects(Q, bad).failing() == [letter] and not packed.passes("HH") and packed.passes("slot_match")
    ok = all(chain.values()) and all(isolated.values())
    return ok, f"chain {chain}, isolated violations detected {isolated}"


def test_criterion_8_jkv_chain():
    _timed(8, 5, criterion_8)


# ---------------------------------------------------------------- 9


def criterion_9():
    rng = random.Random(f"{SEED}:9")
    d_fails = delta_fails = checks = 0
    for L, _ in fx.lie_fixtures().values():
        for _ in range(N // 4 + 1):
            for k in range(L.rank - 1):
                if k == 0:
                    w = Cosection.scalar(L.rank, fx.random_poly(rng, L.base_vars, DEGREE))
                else:
                    w = fx.random_cosection(rng, L.rank, k, L.base_vars, DEGREE)
                d_fails += not differential(L, differential(L, w)).is_zero()
                checks += 1
    for S, _ in fx.lsa_fixtures().values():
        for _ in range(N // 4 + 1):
            for k in range(1, S.rank):
                w = fx.random_cochain(rng, S.rank, k, S.base_vars, DEGREE)
                delta_fails += not coboundary(S, coboundary(S, w)).is_zero()
                checks += 1
    return d_fails == 0 and delta_fails == 0, f"{checks} complexes checked, d^2 failures {d_fails}, delta^2 failures {delta_fails}"


def test_criterion_9_complexes():
    _timed(9, 5, criterion_9)


# ---------------------------------------------------------------- 10


def criterion_10():
    cmd = [sys.executable, "-m", "algebroids", "report", "--seed", "0"]
    outputs, worst = [], 0.0
    for _ in range(2):
        start = time.perf_counter()
        proc = subprocess.run(cmd, capture_output=True, check=False)
        worst = max(worst, time.perf_counter() - start)
        outputs.append(proc.stdout)
        if proc.returncode != 0:
            return False, f"report exited {proc.returncode}: {proc.stderr.decode()[-300:]}"
    identical = outputs[0] == outputs[1]
    return identical and worst < 60, f"two runs byte-identical {identical}, slowest run {worst:.1f}s"


def test_criterion_10_report_determinism():
    # the budget applies per run; the criterion runs twice
    _timed(10, 120, criterion_10)


CRITERIA = [
    (1, 5, criterion_1),
    (2, 2, criterion_2),
    (3, 10, criterion_3),
    (4, 10, criterion_4),
    (5, 5, criterion_5),
    (6, 5, criterion_6),
    (7, 5, criterion_7),
    (8, 5, criterion_8),
    (9, 5, criterion_9),
    (10, 120, criterion_10),
]


if __name__ == "__main__":
    all_ok = True
    for number, budget, body in CRITERIA:
        start = time.perf_counter()
        ok, detail = body()
        all_ok &= _record(number, ok, time.perf_counter() - start, budget, detail)
    sys.exit(0 if all_ok else 1)
