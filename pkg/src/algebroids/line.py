"""Structures on ``A x R``: hat and bar extensions, Psi, Poissonization, KV-ization.

Sections of ``A x R`` are sections of ``A`` whose coefficients may mention
``t`` and ``e^{kt}``; the frame is unchanged, only the base gains ``t``.
Both extensions are ordinary table-plus-anchor structures:

* bar:  table unchanged, anchor ``rho_i + phi_i d/dt``;
* hat:  bracket table ``e^{-t}(c_ij^k - phi_i delta_j^k + phi_j delta_i^k)``,
        product table ``e^{-t}(b_ij^k - phi_i delta_j^k)``,
        anchor ``e^{-t}(rho_i + phi_i d/dt)``.
"""

from __future__ import annotations

from typing import Literal, Union

from .defects import DefectReport
from .lie import AnchoredBundle, LieAlgebroid, check_lie_axioms, lie_bracket, schouten_bracket, tangent_algebroid
from .lsa import LeftSymmetricAlgebroid, SymmetricBivector, associator, kv_bracket, ls_product
from .jlsa import JacobiLSA, delta_phi, jkv_bracket
from .poisson import JacobiAlgebroid, jacobi_defect
from .scalar import LINE_VAR, Scalar
from .tensors import Cosection, Multisection, Section, _accumulate, pair

__all__ = [
    "Variant",
    "extended_bundle",
    "extend_lie",
    "extend_lsa",
    "bracket_direct",
    "product_direct",
    "psi",
    "psi_check",
    "extension_obstruction_report",
    "poissonize",
    "kv_ize",
    "tm_line_isomorphism_report",
    "sub_adjacent_extension_report",
]

Variant = Literal["hat", "bar"]


def _exp(k: int) -> Scalar:
    return Scalar.exp(k)


def _check_variant(variant: str) -> None:
    if variant not in ("hat", "bar"):
        raise ValueError(f"variant must be 'hat' or 'bar', got {variant!r}")


def extended_bundle(bundle: AnchoredBundle, phi0: Cosection, variant: Variant) -> AnchoredBundle:
    _check_variant(variant)
    if LINE_VAR in bundle.base_vars:
        raise ValueError(f"the base already contains {LINE_VAR!r}")
    phi = phi0.as_list()
    scale = _exp(-1) if variant == "hat" else Scalar.one()
    anchor = [[c * scale for c in row] + [phi[i] * scale] for i, row in enumerate(bundle.anchor)]
    return AnchoredBundle(bundle.base_vars + (LINE_VAR,), bundle.rank, anchor)


def extend_lie(L: LieAlgebroid, phi0: Cosection, variant: Variant) -> LieAlgebroid:
    """Candidate hat or bar Lie algebroid on ``A x R`` (valid iff ``d phi0 = 0``)."""
    bundle = extended_bundle(L.bundle, phi0, variant)
    if variant == "bar":
        return LieAlgebroid(bundle, L.table)
    r, phi, s = L.rank, phi0.as_list(), _exp(-1)
    table = []
    for i in range(r):
        row = []
        for j in range(r):
            vec = list(L.table[i][j])
            vec[j] = vec[j] - phi[i]
            vec[i] = vec[i] + phi[j]
            row.append([c * s for c in vec])
        table.append(row)
    return LieAlgebroid(bundle, table)


def extend_lsa(S: LeftSymmetricAlgebroid, phi0: Cosection, variant: Variant) -> LeftSymmetricAlgebroid:
    """Candidate hat or bar left-symmetric algebroid (valid iff ``delta phi0`` symmetric)."""
    bundle = extended_bundle(S.bundle, phi0, variant)
    if variant == "bar":
        return LeftSymmetricAlgebroid(bundle, S.table)
    r, phi, s = S.rank, phi0.as_list(), _exp(-1)
    table = []
    for i in range(r):
        row = []
        for j in range(r):
            vec = list(S.table[i][j])
            vec[j] = vec[j] - phi[i]
            row.append([c * s for c in vec])
        table.append(row)
    return LeftSymmetricAlgebroid(bundle, table)


def _dt(X: Section) -> Section:
    return X.diff(LINE_VAR)


def bracket_direct(L: LieAlgebroid, phi0: Cosection, variant: Variant, X: Section, Y: Section) -> Section:
    """The displayed hat/bar bracket, evaluated without the extended table."""
    _check_variant(variant)
    base = lie_bracket(L, X, Y)
    px, py = pair(phi0, X), pair(phi0, Y)
    if variant == "bar":
        return base + _dt(Y) * px - _dt(X) * py
    return (base + (_dt(Y) - Y) * px - (_dt(X) - X) * py) * _exp(-1)


def product_direct(S: LeftSymmetricAlgebroid, phi0: Cosection, variant: Variant, X: Section, Y: Section) -> Section:
    """The displayed hat/bar product, evaluated without the extended table."""
    _check_variant(variant)
    base = ls_product(S, X, Y)
    px = pair(phi0, X)
    if variant == "bar":
        return base + _dt(Y) * px
    return (base + (_dt(Y) - Y) * px) * _exp(-1)


def psi(X: Section) -> Section:
    """``Psi(X) = e^t X``."""
    return X * _exp(1)


def _test_sections(rank: int) -> list[Section]:
    frames = [Section.basis(rank, i) for i in range(rank)]
    weight = Scalar.var(LINE_VAR) + 1
    return frames + [X * weight for X in frames]


def psi_check(structure: Union[LieAlgebroid, LeftSymmetricAlgebroid], phi0: Cosection) -> DefectReport:
    """``hat rho o Psi = bar rho`` and ``Psi`` intertwines bar with hat.

    Checked on frames and on ``(1 + t)``-weighted frames.
    """
    is_lsa = isinstance(structure, LeftSymmetricAlgebroid)
    ext = extend_lsa if is_lsa else extend_lie
    op = ls_product if is_lsa else lie_bracket
    hat, bar = ext(structure, phi0, "hat"), ext(structure, phi0, "bar")
    r = structure.rank
    anchor: dict = {}
    for i in range(r):
        X = Section.basis(r, i)
        vh = hat.bundle.vector_field(psi(X))
        vb = bar.bundle.vector_field(X)
        for a in range(len(vh)):
            _accumulate(anchor, (i, a), vh[a] - vb[a])
    inter: dict = {}
    tests = _test_sections(r)
    for p, X in enumerate(tests):
        for q, Y in enumerate(tests):
            d = psi(op(bar, X, Y)) - op(hat, psi(X), psi(Y))
            for k, v in enumerate(d.coeffs):
                _accumulate(inter, (p, q, k), v)
    name = "product" if is_lsa else "bracket"
    return DefectReport().add("anchor", anchor).add(name, inter)


def extension_obstruction_report(S: LeftSymmetricAlgebroid, phi0: Cosection) -> DefectReport:
    """Bar associator skew against ``-(delta phi0 (X,Y) - delta phi0 (Y,X)) dZ/dt``.

    ``Z`` runs over ``t``-weighted frames so that ``dZ/dt`` is a frame vector.
    """
    bar = extend_lsa(S, phi0, "bar")
    r = S.rank
    t = Scalar.var(LINE_VAR)
    assoc: dict = {}
    match: dict = {}
    for i in range(r):
        for j in range(i + 1, r):
            X, Y = Section.basis(r, i), Section.basis(r, j)
            skew = delta_phi(S, phi0, X, Y) - delta_phi(S, phi0, Y, X)
            for k in range(r):
                Z = Section.basis(r, k) * t
                d = associator(bar, X, Y, Z) - associator(bar, Y, X, Z)
                expected = _dt(Z) * (-skew)
                for m in range(r):
                    _accumulate(assoc, (i, j, k, m), d[m])
                    _accumulate(match, (i, j, k, m), d[m] - expected[m])
    return DefectReport().add("associator_skew", assoc).add("matches_delta_phi0", match)


def _scale_multi(D: Multisection, f: Scalar) -> Multisection:
    return D * f


def poissonize(J: JacobiAlgebroid, pi: Multisection) -> tuple[Multisection, DefectReport]:
    """``pi~ = e^{-t} pi`` on the bar extension, with the scaling and Poisson defects."""
    bar = extend_lie(J.lie, J.phi0, "bar")
    tpi = _scale_multi(pi, _exp(-1))
    PP = schouten_bracket(bar, tpi, tpi)
    scaling = PP - jacobi_defect(J, pi) * _exp(-2)
    return tpi, DefectReport().add("scaling", scaling).add("poisson", PP)


def kv_ize(J: JacobiLSA, h: SymmetricBivector) -> tuple[SymmetricBivector, DefectReport]:
    """``h~ = e^{-t} h`` on the bar extension, with the scaling and KV defects."""
    bar = extend_lsa(J.lsa, J.phi0, "bar")
    th = h.scaled(_exp(-1))
    K = kv_bracket(bar, th)
    scaling = K - jkv_bracket(J, h).scaled(_exp(-2))
    return th, DefectReport().add("scaling", scaling.coeffs).add("kv", K.coeffs)


def tm_line_isomorphism_report(base_vars) -> DefectReport:
    """Bar extension of ``(TM + R, (0,1))`` against ``T(M x R)`` under ``(d/dx, e) -> (d/dx, d/dt)``."""
    from .lie import direct_sum_line

    L = direct_sum_line(tangent_algebroid(base_vars))
    phi = Cosection(L.rank, 1, {(L.rank - 1,): 1})
    bar = extend_lie(L, phi, "bar")
    T = tangent_algebroid(tuple(base_vars) + (LINE_VAR,))
    anchor: dict = {}
    for i in range(L.rank):
        for a in range(T.bundle.dim):
            _accumulate(anchor, (i, a), bar.bundle.anchor[i][a] - T.bundle.anchor[i][a])
    table: dict = {}
    for i in range(L.rank):
        for j in range(L.rank):
            for k in range(L.rank):
                _accumulate(table, (i, j, k), bar.table[i][j][k] - T.table[i][j][k])
    report = DefectReport().add("anchor", anchor).add("table", table)
    report.extend(check_lie_axioms(bar), prefix="bar.")
    return report


def sub_adjacent_extension_report(S: LeftSymmetricAlgebroid, phi0: Cosection, variant: Variant) -> DefectReport:
    """Commutator of the extended product against the extended commutator bracket."""
    ext = extend_lsa(S, phi0, variant).commutator()
    ref = extend_lie(S.commutator(), phi0, variant)
    r = S.rank
    anchor: dict = {}
    for i in range(r):
        for a in range(ext.bundle.dim):
            _accumulate(anchor, (i, a), ext.bundle.anchor[i][a] - ref.bundle.anchor[i][a])
    table: dict = {}
    for i in range(r):
        for j in range(r):
            for k in range(r):
                _accumulate(table, (i, j, k), ext.table[i][j][k] - ref.table[i][j][k])
    return DefectReport().add("anchor", anchor).add("table", table)
