"""Identity registry and the deterministic fixture/property suite."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from . import fixtures as fx
from .defects import DefectReport
from .jlsa import (
    JacobiLSA,
    cocycle_symmetry_report,
    dual_jlsa_report,
    jkv_bracket,
    twisted_product_forms_report,
    twisted_sharp_identity,
)
from .lie import check_lie_axioms, differential
from .line import (
    extend_lie,
    extend_lsa,
    extension_obstruction_report,
    kv_ize,
    poissonize,
    psi_check,
    sub_adjacent_extension_report,
    tm_line_isomorphism_report,
)
from .lsa import (
    SymmetricBivector,
    build_dual_lsa,
    check_lsa_axioms,
    coboundary,
    dual_product,
    kv_bracket,
    ls_obstruction_identity,
    sharp_compat_identity,
)
from .manifold import (
    AffinePatch,
    JKVPair,
    codazzi_defect,
    dtheta_closed_form_report,
    dual_connection_report,
    jkv_defects,
    jkv_equivalence_report,
    kv_manifold_equivalence_report,
    lch_report,
    pack_H,
    semi_weyl_translation_report,
)
from .poisson import (
    JacobiAlgebroid,
    half_pi_pi_identity,
    jacobi_defect,
    jacobi_pair_check,
    pack_jacobi_pair,
    poisson_defect,
    twisted_half_pi_pi_identity,
    unit_line_cosection,
)
from .scalar import Scalar
from .tensors import Cosection, Section

__all__ = [
    "IDENTITY_NAMES",
    "Identity",
    "IDENTITIES",
    "EXTRA_IDENTITIES",
    "FixtureCheck",
    "frozen_fixtures",
    "run_identity",
    "run_suite",
    "SuiteConfig",
    "identity_rng",
]

Rng = random.Random


def _only(report: DefectReport, *names: str) -> DefectReport:
    out = DefectReport()
    for n in names:
        if n in report.entries:
            out.add(n, report.entries[n])
        else:
            out.require(n, report.conditions[n])
    return out


def _pick(rng: Rng, table: dict):
    name = rng.choice(sorted(table))
    return name, table[name]


# Each generator draws one random instance and returns (label, report of
# must-vanish entries).

def _half_pi_pi(rng: Rng, d: int):
    name, (L, _) = _pick(rng, fx.lie_fixtures())
    pi = fx.random_bivector(rng, L.rank, L.base_vars, d)
    return name, half_pi_pi_identity(L, pi)


def _twisted_half_pi_pi(rng: Rng, d: int):
    name, J = _pick(rng, fx.jacobi_fixtures(rng, d))
    pi = fx.random_bivector(rng, J.rank, J.lie.base_vars, d)
    return name, twisted_half_pi_pi_identity(J, pi)


def _sharp_compat(rng: Rng, d: int):
    name, (S, _) = _pick(rng, fx.lsa_fixtures())
    h = fx.random_symmetric(rng, S.rank, S.base_vars, d)
    return name, sharp_compat_identity(S, h)


def _ls_obstruction(rng: Rng, d: int):
    name, (S, _) = _pick(rng, fx.lsa_fixtures())
    h = fx.random_symmetric(rng, S.rank, S.base_vars, d)
    return name, ls_obstruction_identity(S, h)


def _cocyc(rng: Rng, d: int):
    name, (S, _) = _pick(rng, fx.lsa_fixtures())
    phi = fx.random_cosection(rng, S.rank, 1, S.base_vars, d)
    return name, _only(cocycle_symmetry_report(S, phi), "identity_defect")


def _twisted_sharp(rng: Rng, d: int):
    name, (S, _) = _pick(rng, fx.lsa_fixtures())
    J = JacobiLSA(S, fx.random_cosection(rng, S.rank, 1, S.base_vars, d))
    h = fx.random_symmetric(rng, S.rank, S.base_vars, d)
    report = twisted_sharp_identity(J, h)
    report.extend(twisted_product_forms_report(J, h))
    return name, report


def _psi_intertwine(rng: Rng, d: int):
    if rng.random() < 0.5:
        S = fx.random_candidate_lsa(rng, d)
        label = "candidate_lsa"
    else:
        S = fx.random_candidate_lie(rng, d)
        label = "candidate_lie"
    phi = fx.random_cosection(rng, S.rank, 1, S.base_vars, d)
    return label, psi_check(S, phi)


def _poissonize_scaling(rng: Rng, d: int):
    name, J = _pick(rng, fx.jacobi_fixtures(rng, d))
    pi = fx.random_bivector(rng, J.rank, J.lie.base_vars, d)
    return name, _only(poissonize(J, pi)[1], "scaling")


def _kvize_scaling(rng: Rng, d: int):
    name, J = _pick(rng, fx.jlsa_fixtures(rng, d))
    h = fx.random_symmetric(rng, J.rank, J.lsa.base_vars, d)
    return name, _only(kv_ize(J, h)[1], "scaling")


def _random_patch(rng: Rng) -> AffinePatch:
    return rng.choice([AffinePatch(("x",)), AffinePatch(("x", "y")), fx.flat_patch_2d()])


def _dtheta(rng: Rng, d: int):
    P = _random_patch(rng)
    g = fx.random_symmetric(rng, P.dim, P.base_vars, d)
    E = fx.random_section(rng, P.dim, P.base_vars, d)
    return f"R{P.dim}", _only(dtheta_closed_form_report(P, g.matrix, E), "full")


def _pack_h(rng: Rng, d: int):
    P = _random_patch(rng)
    h = fx.random_symmetric(rng, P.dim, P.base_vars, d)
    E = fx.random_section(rng, P.dim, P.base_vars, d)
    return f"R{P.dim}", _only(jkv_equivalence_report(P, JKVPair(h, E)), "slot_match", "equivalent")


def _d_squared(rng: Rng, d: int):
    name, (L, _) = _pick(rng, fx.lie_fixtures())
    k = rng.randint(0, max(0, L.rank - 2))
    omega = fx.random_cosection(rng, L.rank, k, L.base_vars, d)
    return name, DefectReport().add("d_squared", differential(L, differential(L, omega)))


def _delta_squared(rng: Rng, d: int):
    name, (S, _) = _pick(rng, fx.lsa_fixtures())
    k = rng.randint(1, max(1, S.rank - 1))
    c = fx.random_cochain(rng, S.rank, k, S.base_vars, d)
    return name, DefectReport().add("delta_squared", coboundary(S, coboundary(S, c)).entries())


def _semi_weyl_translation(rng: Rng, d: int):
    P = _random_patch(rng)
    h = fx.random_metric(rng, P.dim, P.base_vars, d)
    E = fx.random_section(rng, P.dim, P.base_vars, d)
    return f"R{P.dim}", semi_weyl_translation_report(P, JKVPair(h, E))


def _sub_adjacent_extension(rng: Rng, d: int):
    S = fx.random_candidate_lsa(rng, d)
    phi = fx.random_cosection(rng, S.rank, 1, S.base_vars, d)
    variant = rng.choice(["hat", "bar"])
    return variant, sub_adjacent_extension_report(S, phi, variant)


@dataclass(frozen=True)
class Identity:
    name: str
    generate: Callable[[Rng, int], tuple[str, DefectReport]]
    instances: int


IDENTITIES: dict[str, Identity] = {
    i.name: i
    for i in [
        Identity("half-pi-pi", _half_pi_pi, 20),
        Identity("twisted-half-pi-pi", _twisted_half_pi_pi, 20),
        Identity("sharp-compat", _sharp_compat, 20),
        Identity("ls-obstruction", _ls_obstruction, 20),
        Identity("cocyc", _cocyc, 20),
        Identity("twisted-sharp", _twisted_sharp, 20),
        Identity("psi-intertwine", _psi_intertwine, 20),
        Identity("poissonize-scaling", _poissonize_scaling, 20),
        Identity("kvize-scaling", _kvize_scaling, 20),
        Identity("dtheta-closed-form", _dtheta, 20),
        Identity("pack-H-equivalence", _pack_h, 20),
    ]
}

IDENTITY_NAMES = tuple(IDENTITIES)

# suite-only identities, not exposed under frozen CLI names
EXTRA_IDENTITIES: dict[str, Identity] = {
    i.name: i
    for i in [
        Identity("d-squared", _d_squared, 20),
        Identity("delta-squared", _delta_squared, 20),
        Identity("semi-weyl-translation", _semi_weyl_translation, 20),
        Identity("sub-adjacent-extension", _sub_adjacent_extension, 20),
    ]
}


def identity_rng(seed: int, name: str, index: int) -> Rng:
    """Independent stream per (seed, identity, instance), stable across runs."""
    return random.Random(f"{seed}:{name}:{index}")


def run_identity(name: str, seed: int = 0, max_degree: int = 2, instances: int | None = None) -> dict:
    ident = IDENTITIES.get(name) or EXTRA_IDENTITIES.get(name)
    if ident is None:
        raise KeyError(f"unknown identity {name!r}")
    n = ident.instances if instances is None else instances
    failures = []
    for k in range(n):
        label, report = ident.generate(identity_rng(seed, name, k), max_degree)
        if not report.ok:
            failures.append({"instance": k, "fixture": label, "report": report.to_dict()})
    return {
        "verdict": "pass" if not failures else "fail",
        "instances": n,
        "failures": failures,
    }


# ---------------------------------------------------------------- fixtures

@dataclass(frozen=True)
class FixtureCheck:
    """A frozen fixture check and the verdict it must reproduce."""

    name: str
    build: Callable[[], DefectReport]
    expect_pass: bool


def _contact_checks() -> list[FixtureCheck]:
    def pair_check():
        L, P = fx.contact_r3()
        return jacobi_pair_check(L, P)

    def lambda_alone():
        L, P = fx.contact_r3()
        return DefectReport().add("poisson", poisson_defect(L, P.Lambda))

    def packed_jacobi():
        from .lie import direct_sum_line

        L, P = fx.contact_r3()
        big = direct_sum_line(L)
        J = JacobiAlgebroid(big, unit_line_cosection(big.rank))
        return DefectReport().add("jacobi", jacobi_defect(J, pack_jacobi_pair(P)))

    def poissonization():
        from .lie import direct_sum_line

        L, P = fx.contact_r3()
        big = direct_sum_line(L)
        J = JacobiAlgebroid(big, unit_line_cosection(big.rank))
        return poissonize(J, pack_jacobi_pair(P))[1]

    return [
        FixtureCheck("contact.jacobi_pair", pair_check, True),
        FixtureCheck("contact.lambda_poisson", lambda_alone, False),
        FixtureCheck("contact.packed_jacobi", packed_jacobi, True),
        FixtureCheck("contact.poissonization", poissonization, True),
        FixtureCheck("contact.tm_line_isomorphism", lambda: tm_line_isomorphism_report(("x", "y", "z")), True),
    ]


def _jkv_checks() -> list[FixtureCheck]:
    def kvization():
        P, p = fx.jkv_1d()
        return kv_ize(P.bar_jlsa(), pack_H(p))[1]

    def dual():
        P, p = fx.jkv_1d()
        return dual_jlsa_report(P.bar_jlsa(), pack_H(p))

    def ctor(f, which):
        def build():
            P, p = f()
            return which(P, p)

        return build

    return [
        FixtureCheck("jkv1d.defects", ctor(fx.jkv_1d, jkv_defects), True),
        FixtureCheck("jkv1d.pack_H", ctor(fx.jkv_1d, jkv_equivalence_report), True),
        FixtureCheck("jkv1d.lch", ctor(fx.jkv_1d, lch_report), True),
        FixtureCheck("jkv1d.kv_ization", kvization, True),
        FixtureCheck("jkv1d.dual_jlsa", dual, True),
        FixtureCheck("jkv_only_i.defects", ctor(fx.jkv_only_i, jkv_defects), False),
        FixtureCheck("jkv_only_ii.defects", ctor(fx.jkv_only_ii, jkv_defects), False),
        FixtureCheck("jkv_only_iii.defects", ctor(fx.jkv_only_iii, jkv_defects), False),
        FixtureCheck("jkv_only_i.pack_H_slots", ctor(fx.jkv_only_i, _slots), True),
        FixtureCheck("jkv_only_ii.pack_H_slots", ctor(fx.jkv_only_ii, _slots), True),
        FixtureCheck("jkv_only_iii.pack_H_slots", ctor(fx.jkv_only_iii, _slots), True),
    ]


def _slots(P, p) -> DefectReport:
    return _only(jkv_equivalence_report(P, p), "slot_match", "equivalent")


def _kv_checks() -> list[FixtureCheck]:
    x = Scalar.var("x", ("x", "y"))
    flat2 = AffinePatch(("x", "y"))
    one = AffinePatch(("x",))

    def dual_axioms(P, h):
        return lambda: check_lsa_axioms(build_dual_lsa(P.lsa(), h))

    def kv(P, h):
        return lambda: DefectReport().add("kv", kv_bracket(P.lsa(), h).coeffs)

    h_const = SymmetricBivector(((2, 1), (1, 3)))
    h_poly = SymmetricBivector(((1 + Scalar.var("x") ** 2,),))
    h_bad = SymmetricBivector(((1, 0), (0, x)))

    def dual_product_1d():
        S = one.lsa()
        dx = Cosection(1, 1, {(0,): 1})
        got = dual_product(S, SymmetricBivector(((Scalar.var("x"),),)), dx, dx)
        return DefectReport().add("dual_product_minus_dx", got - dx)

    return [
        FixtureCheck("kv.const_R2.dual_lsa", dual_axioms(flat2, h_const), True),
        FixtureCheck("kv.poly_R1.dual_lsa", dual_axioms(one, h_poly), True),
        FixtureCheck("kv.diag_1_x.kv_bracket", kv(flat2, h_bad), False),
        FixtureCheck("kv.diag_1_x.dual_lsa", dual_axioms(flat2, h_bad), False),
        FixtureCheck("kv.diag_1_x.manifold_equivalence", lambda: _only(
            kv_manifold_equivalence_report(flat2, h_bad), "equivalent"), True),
        FixtureCheck("kv.dual_product_R1", dual_product_1d, True),
        FixtureCheck("codazzi.diag_1_x", lambda: DefectReport().add(
            "codazzi", codazzi_defect(flat2, ((1, 0), (0, x)))), False),
        FixtureCheck("dual_connection.diag_1_x.equivalence", lambda: _only(
            dual_connection_report(flat2, ((1, 0), (0, x))), "equivalent"), True),
    ]


def _line_checks() -> list[FixtureCheck]:
    y = Scalar.var("y", ("x", "y"))
    x = Scalar.var("x", ("x", "y"))
    tm2 = fx.tm(2)
    flat2 = AffinePatch(("x", "y"))
    nonclosed = Cosection(2, 1, {(0,): y})
    asym = Cosection(2, 1, {(0,): y, (1,): x * x})

    def bar_nabla_bar():
        P, _ = fx.jkv_1d()
        J = P.bar_jlsa()
        return check_lsa_axioms(extend_lsa(J.lsa, J.phi0, "bar"))

    return [
        FixtureCheck("line.nonclosed.lie_axioms_bar", lambda: check_lie_axioms(extend_lie(tm2, nonclosed, "bar")), False),
        FixtureCheck("line.nonclosed.lie_axioms_hat", lambda: check_lie_axioms(extend_lie(tm2, nonclosed, "hat")), False),
        FixtureCheck("line.asym_delta.obstruction_match", lambda: _only(
            extension_obstruction_report(flat2.lsa(), asym), "matches_delta_phi0"), True),
        FixtureCheck("line.asym_delta.associator", lambda: _only(
            extension_obstruction_report(flat2.lsa(), asym), "associator_skew"), False),
        FixtureCheck("line.barnabla_R1.bar_lsa", bar_nabla_bar, True),
    ]


def _sign_checks() -> list[FixtureCheck]:
    def rank3():
        from .tensors import Multisection

        x = Scalar.var("x", ("x", "y"))
        y = Scalar.var("y", ("x", "y"))
        pi = Multisection(3, 2, {(0, 1): x * y, (0, 2): 1 + x, (1, 2): y * y})
        return half_pi_pi_identity(fx.action_rank3(), pi)

    return [FixtureCheck("sign.half_pi_pi.action_rank3", rank3, True)]


def frozen_fixtures() -> list[FixtureCheck]:
    return _sign_checks() + _contact_checks() + _jkv_checks() + _kv_checks() + _line_checks()


@dataclass(frozen=True)
class SuiteConfig:
    """Knobs for :func:`run_suite`; ``instances`` overrides every per-identity count."""

    seed: int = 0
    max_degree: int = 2
    instances: int | None = None

    def run(self) -> dict:
        return run_suite(self.seed, self.max_degree, self.instances)


def run_suite(seed: int = 0, max_degree: int = 2, instances: int | None = None) -> dict:
    """Frozen fixtures plus randomized unconditional identities, as plain data."""
    fixtures_out = {}
    all_ok = True
    for fc in frozen_fixtures():
        report = fc.build()
        ok = report.ok == fc.expect_pass
        all_ok &= ok
        entry = {
            "expected": "pass" if fc.expect_pass else "fail",
            "observed": "pass" if report.ok else "fail",
            "status": "ok" if ok else "MISMATCH",
        }
        if not report.ok:
            entry["report"] = report.to_dict()
        fixtures_out[fc.name] = entry
    identities_out = {}
    for name in list(IDENTITIES) + list(EXTRA_IDENTITIES):
        res = run_identity(name, seed, max_degree, instances)
        all_ok &= res["verdict"] == "pass"
        identities_out[name] = res
    return {
        "suite": {"seed": seed, "max_degree": max_degree}
        | ({} if instances is None else {"instances": instances}),
        "fixtures": fixtures_out,
        "identities": identities_out,
        "verdict": "pass" if all_ok else "fail",
    }
