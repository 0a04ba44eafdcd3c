"""Single-patch manifold checks: Codazzi, Koszul-Vinberg, JKV, semi-Weyl.

Everything lives on one polynomial coordinate chart with the coordinate
frame ``d/dx^i``; ``h`` and ``g`` are stored as matrices in that frame
and its dual.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .defects import DefectReport, StructureError
from .jlsa import JacobiLSA, jkv_bracket
from .lie import Connection, LieAlgebroid, _scalar, differential, tangent_algebroid
from .linalg import SingularMatrixError, det, inverse, is_symmetric
from .lsa import LeftSymmetricAlgebroid, SymmetricBivector, kv_bracket, lsa_bar_nabla, lsa_from_connection
from .poisson import unit_line_cosection
from .scalar import Scalar
from .tensors import Cosection, Section, _accumulate, pair

__all__ = [
    "AffinePatch",
    "MetricTensor",
    "JKVPair",
    "covariant_h",
    "codazzi_defect",
    "kv_manifold_defect",
    "kv_manifold_equivalence_report",
    "jkv_defects",
    "pack_H",
    "jkv_equivalence_report",
    "semi_weyl_defect",
    "semi_weyl_translation_report",
    "dtheta_closed_form_report",
    "lch_report",
    "dual_connection_report",
]


@dataclass(frozen=True)
class AffinePatch:
    """Flat torsion-free ``nabla`` on a chart: ``nabla_{d_i} d_j = gamma[i][j][k] d_k``."""

    base_vars: tuple[str, ...]
    gamma: tuple = None
    connection: Connection = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        base = tuple(self.base_vars)
        object.__setattr__(self, "base_vars", base)
        T = tangent_algebroid(base)
        n = len(base)
        gamma = self.gamma
        if gamma is None:
            gamma = [[[0] * n for _ in range(n)] for _ in range(n)]
        C = Connection(T, gamma)
        object.__setattr__(self, "gamma", C.table)
        object.__setattr__(self, "connection", C)
        torsion, curvature = C.torsion(), C.curvature()
        if torsion or curvature:
            report = DefectReport().add("torsion", torsion).add("curvature", curvature)
            raise StructureError("an affine patch needs a flat torsion-free connection", report)

    @property
    def dim(self) -> int:
        return len(self.base_vars)

    @property
    def tangent(self) -> LieAlgebroid:
        return self.connection.algebroid

    def lsa(self) -> LeftSymmetricAlgebroid:
        """``TM_nabla``."""
        return lsa_from_connection(self.connection)

    def bar_jlsa(self) -> JacobiLSA:
        """``((TM + R, bar nabla, pr_1), (0, 1))``."""
        S = lsa_bar_nabla(self.tangent, self.connection)
        return JacobiLSA(S, unit_line_cosection(S.rank))

    def nabla(self, X: Section, Y: Section) -> Section:
        return self.connection.apply(X, Y)


@dataclass(frozen=True)
class MetricTensor:
    g: tuple

    def __post_init__(self):
        m = tuple(tuple(_scalar(v) for v in row) for row in self.g)
        if any(len(row) != len(m) for row in m):
            raise ValueError("g must be square")
        if not is_symmetric(m):
            raise ValueError("g must be symmetric")
        object.__setattr__(self, "g", m)

    @property
    def dim(self) -> int:
        return len(self.g)

    def det(self) -> Scalar:
        return det(self.g)

    def is_nondegenerate(self) -> bool:
        return not self.det().is_zero()

    def __call__(self, X: Section, Y: Section) -> Scalar:
        total = Scalar.zero()
        for i, xi in enumerate(X.coeffs):
            if xi.is_zero():
                continue
            for j, yj in enumerate(Y.coeffs):
                if not yj.is_zero() and not self.g[i][j].is_zero():
                    total = total + xi * yj * self.g[i][j]
        return total

    def flat(self, X: Section) -> Cosection:
        n = self.dim
        return Cosection.from_coeffs([sum((X[i] * self.g[i][j] for i in range(n)), Scalar.zero()) for j in range(n)])

    @classmethod
    def from_h(cls, h: SymmetricBivector) -> "MetricTensor":
        """``g_flat = (h_sharp)^{-1}``."""
        try:
            return cls(inverse(h.matrix))
        except SingularMatrixError as exc:
            raise SingularMatrixError("h is degenerate") from exc


@dataclass(frozen=True)
class JKVPair:
    h: SymmetricBivector
    E: Section

    def __post_init__(self):
        if not isinstance(self.h, SymmetricBivector):
            object.__setattr__(self, "h", SymmetricBivector(self.h))
        if not isinstance(self.E, Section):
            object.__setattr__(self, "E", Section(tuple(_scalar(v) for v in self.E)))
        if self.E.rank != self.h.rank:
            raise ValueError("h and E have different dimensions")


def _metric(g) -> MetricTensor:
    return g if isinstance(g, MetricTensor) else MetricTensor(g)


def _dual(n: int, a: int) -> Cosection:
    return Cosection(n, 1, {(a,): 1})


def covariant_h(P: AffinePatch, h: SymmetricBivector) -> list:
    """``D[i][b][c] = (nabla_{d_i} h)(dx^b, dx^c)``."""
    n, G, T = P.dim, P.gamma, P.tangent
    out = []
    for i in range(n):
        block = []
        for b in range(n):
            row = []
            for c in range(n):
                v = T.derive(i, h.matrix[b][c])
                for m in range(n):
                    if not G[i][m][b].is_zero():
                        v = v + G[i][m][b] * h.matrix[m][c]
                    if not G[i][m][c].is_zero():
                        v = v + G[i][m][c] * h.matrix[b][m]
                row.append(v)
            block.append(row)
        out.append(block)
    return out


def _contract(X: Section, D: list, b: int, c: int) -> Scalar:
    total = Scalar.zero()
    for i, xi in enumerate(X.coeffs):
        if not xi.is_zero() and not D[i][b][c].is_zero():
            total = total + xi * D[i][b][c]
    return total


def _covariant_g(P: AffinePatch, g: MetricTensor):
    cf = P.connection.covariant_form(g.g)

    def nabla_g(X: Section, Y: Section, Z: Section) -> Scalar:
        total = Scalar.zero()
        for (i, j, l), v in cf.items():
            if v.is_zero():
                continue
            w = X[i] * Y[j] * Z[l]
            if not w.is_zero():
                total = total + w * v
        return total

    return cf, nabla_g


def codazzi_defect(P: AffinePatch, g) -> dict:
    """``(nabla_i g)(e_j, e_k) - (nabla_j g)(e_i, e_k)`` for ``i < j``."""
    g = _metric(g)
    cf = P.connection.covariant_form(g.g)
    n = P.dim
    out: dict = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                _accumulate(out, (i, j, k), cf[(i, j, k)] - cf[(j, i, k)])
    return out


def _condition_i(P: AffinePatch, h: SymmetricBivector, E: Section | None) -> dict:
    n = P.dim
    D = covariant_h(P, h)
    sharps = [h.sharp(_dual(n, a)) for a in range(n)]
    out: dict = {}
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(n):
                v = _contract(sharps[a], D, b, c) - _contract(sharps[b], D, a, c)
                if E is not None:
                    v = v - E[a] * h.matrix[b][c] + E[b] * h.matrix[a][c]
                _accumulate(out, (a, b, c), v)
    return out


def kv_manifold_defect(P: AffinePatch, h: SymmetricBivector) -> dict:
    """``(nabla_{h# a} h)(b, c) - (nabla_{h# b} h)(a, c)`` on dual frames, ``a < b``."""
    return _condition_i(P, h, None)


def kv_manifold_equivalence_report(P: AffinePatch, h: SymmetricBivector) -> DefectReport:
    """The Codazzi-type defect against ``[[h,h]]`` on ``TM_nabla``."""
    kv = kv_manifold_defect(P, h)
    K = kv_bracket(P.lsa(), h)
    report = DefectReport().add("kv_manifold", kv).add("kv_bracket", K.coeffs)
    report.require("equivalent", (not kv) == K.is_zero())
    return report


def _condition_ii(P: AffinePatch, h: SymmetricBivector, E: Section) -> dict:
    n = P.dim
    D = covariant_h(P, h)
    out: dict = {}
    for b in range(n):
        nE = P.nabla(h.sharp(_dual(n, b)), E)
        for c in range(n):
            _accumulate(out, (b, c), _contract(E, D, b, c) - nE[c] + E[b] * E[c])
    return out


def jkv_defects(P: AffinePatch, jkv: JKVPair) -> DefectReport:
    """Conditions (i), (ii), (iii) of a Jacobi-Koszul-Vinberg pair as defect tensors."""
    h, E = jkv.h, jkv.E
    report = DefectReport()
    report.add("i", _condition_i(P, h, E))
    report.add("ii", _condition_ii(P, h, E))
    report.add("iii", P.nabla(E, E))
    return report


def pack_H(jkv: JKVPair) -> SymmetricBivector:
    """``H = h + d/dt (x) E + E (x) d/dt`` with ``d/dt`` the last frame vector."""
    n = jkv.h.rank
    rows = [list(jkv.h.matrix[i]) + [jkv.E[i]] for i in range(n)]
    rows.append(list(jkv.E.coeffs) + [Scalar.zero()])
    return SymmetricBivector(tuple(tuple(r) for r in rows))


def _expected_packed(P: AffinePatch, jkv: JKVPair, report: DefectReport) -> dict:
    """``[[H,H]]^{(0,1)}`` predicted slot by slot from (i), (ii), (iii).

    Index ``n`` is ``dt``.  Entries are keyed ``(a, b, c)`` with ``a < b``.
    """
    n = P.dim
    ci, cii, ciii = report["i"], report["ii"], report["iii"]
    z = Scalar.zero()

    def i_(a, b, c):
        if a == b:
            return z
        return ci.get((a, b, c), z) if a < b else -ci.get((b, a, c), z)

    out: dict = {}
    for a in range(n + 1):
        for b in range(a + 1, n + 1):
            for c in range(n + 1):
                if b < n and c < n:
                    v = -i_(a, b, c)
                elif b < n:
                    v = cii.get((a, b), z) - cii.get((b, a), z)
                elif a < n and c < n:
                    v = cii.get((a, c), z)
                elif a < n:
                    v = ciii.get((a,), z)
                else:
                    v = z
                _accumulate(out, (a, b, c), v)
    return out


def jkv_equivalence_report(P: AffinePatch, jkv: JKVPair) -> DefectReport:
    """``[[H,H]]^{(0,1)}`` on the bar-nabla JLSA beside (i)-(iii).

    ``slot_match`` compares every component with the expansion in terms of
    the three conditions; ``equivalent`` asserts simultaneous vanishing.
    """
    J = P.bar_jlsa()
    K = jkv_bracket(J, pack_H(jkv))
    conds = jkv_defects(P, jkv)
    report = DefectReport().add("HH", K.coeffs)
    report.extend(conds)
    expected = _expected_packed(P, jkv, conds)
    match = dict(K.coeffs)
    for k, v in expected.items():
        _accumulate(match, k, -v)
    report.add("slot_match", match)
    report.require("equivalent", K.is_zero() == conds.ok)
    return report


def semi_weyl_defect(P: AffinePatch, g, theta: Cosection) -> dict:
    """Skew part of ``(nabla_X g)(Y, Z) + theta(X) g(Y, Z)`` in ``X, Y``."""
    g = _metric(g)
    cf = P.connection.covariant_form(g.g)
    th = theta.as_list()
    n = P.dim
    out: dict = {}
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(n):
                v = cf[(i, j, k)] + th[i] * g.g[j][k] - cf[(j, i, k)] - th[j] * g.g[i][k]
                _accumulate(out, (i, j, k), v)
    return out


def _theta(g: MetricTensor, E: Section) -> Cosection:
    return g.flat(E)


def semi_weyl_translation_report(P: AffinePatch, jkv: JKVPair) -> DefectReport:
    """Condition (i) against ``-(semi-Weyl skew)`` evaluated on ``h#`` of dual frames.

    Needs ``h`` nondegenerate; holds for any such pair.
    """
    h, E = jkv.h, jkv.E
    g = MetricTensor.from_h(h)
    theta = _theta(g, E)
    _, nabla_g = _covariant_g(P, g)
    n = P.dim
    sharps = [h.sharp(_dual(n, a)) for a in range(n)]
    ci = _condition_i(P, h, E)
    out: dict = {}
    for a in range(n):
        for b in range(a + 1, n):
            X, Y = sharps[a], sharps[b]
            for c in range(n):
                Z = sharps[c]
                sw = (
                    nabla_g(X, Y, Z)
                    + pair(theta, X) * g(Y, Z)
                    - nabla_g(Y, X, Z)
                    - pair(theta, Y) * g(X, Z)
                )
                _accumulate(out, (a, b, c), ci.get((a, b, c), Scalar.zero()) + sw)
    return DefectReport().add("translation", out)


def dtheta_closed_form_report(P: AffinePatch, g, E: Section) -> DefectReport:
    """``d theta`` for ``theta = g_flat E`` against its expansion.

    ``full`` is the unconditional four-term form
    ``(nabla_X g)(Y,E) + g(Y, nabla_X E) - (nabla_Y g)(X,E) - g(X, nabla_Y E)``;
    ``short`` keeps only the two ``nabla E`` terms, valid under semi-Weyl.
    """
    g = _metric(g)
    theta = _theta(g, E)
    dth = differential(P.tangent, theta)
    _, nabla_g = _covariant_g(P, g)
    n = P.dim
    frames = [Section.basis(n, i) for i in range(n)]
    full: dict = {}
    short: dict = {}
    for i in range(n):
        for j in range(i + 1, n):
            X, Y = frames[i], frames[j]
            s = g(Y, P.nabla(X, E)) - g(X, P.nabla(Y, E))
            f = s + nabla_g(X, Y, E) - nabla_g(Y, X, E)
            v = dth.component((i, j))
            _accumulate(full, (i, j), v - f)
            _accumulate(short, (i, j), v - s)
    return DefectReport().add("full", full).add("short", short)


def lch_report(P: AffinePatch, jkv: JKVPair) -> DefectReport:
    """Locally conformally Hessian verdict for a pair with nondegenerate ``h``."""
    g = MetricTensor.from_h(jkv.h)
    theta = _theta(g, jkv.E)
    report = DefectReport()
    report.add("semi_weyl", semi_weyl_defect(P, g, theta))
    report.add("torsion", P.connection.torsion())
    report.add("curvature", P.connection.curvature())
    report.add("dtheta", differential(P.tangent, theta))
    report.extend(dtheta_closed_form_report(P, g, jkv.E), prefix="dtheta_")
    return report


def dual_connection_report(P: AffinePatch, g) -> DefectReport:
    """Torsion of the dual connection beside the Codazzi defect of ``g``."""
    g = _metric(g)
    if not g.is_nondegenerate():
        raise SingularMatrixError("g is degenerate")
    dual = P.connection.dual_connection(g.g)
    torsion = dual.torsion()
    cod = codazzi_defect(P, g)
    report = DefectReport().add("dual_torsion", torsion).add("codazzi", cod)
    report.require("equivalent", (not torsion) == (not cod))
    return report
