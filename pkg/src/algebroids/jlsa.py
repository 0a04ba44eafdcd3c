"""Jacobi-left-symmetric algebroids and Jacobi-Koszul-Vinberg structures."""

from __future__ import annotations

from .defects import DefectReport, StructureError
from .lie import differential
from .lsa import (
    KVTensor,
    LeftSymmetricAlgebroid,
    SymmetricBivector,
    R_op,
    build_dual_lsa,
    check_lsa_axioms,
    dual_product,
    kv_bracket,
    ls_product,
)
from .poisson import JacobiAlgebroid, twisted_differential, twisted_lie_derivative
from .scalar import Scalar
from .tensors import Cosection, Section, _accumulate, pair

__all__ = [
    "JacobiLSA",
    "delta_phi",
    "cocycle_symmetry_report",
    "jkv_bracket",
    "twisted_dual_product",
    "twisted_dual_product_definitional",
    "twisted_product_forms_report",
    "twisted_leibniz_report",
    "twisted_sharp_identity",
    "build_dual_jlsa",
    "dual_jlsa_report",
]


def _dual(rank: int, a: int) -> Cosection:
    return Cosection(rank, 1, {(a,): 1})


def delta_phi(S: LeftSymmetricAlgebroid, phi: Cosection, X: Section, Y: Section) -> Scalar:
    """``(delta_A phi)(X, Y) = rho(X)<phi, Y> - <phi, X . Y>``."""
    return S.bundle.apply(X, pair(phi, Y)) - pair(phi, ls_product(S, X, Y))


def _sym_defect(S: LeftSymmetricAlgebroid, phi: Cosection) -> dict:
    out: dict = {}
    r = S.rank
    for i in range(r):
        for j in range(i + 1, r):
            ei, ej = S.frame(i), S.frame(j)
            _accumulate(out, (i, j), delta_phi(S, phi, ei, ej) - delta_phi(S, phi, ej, ei))
    return out


class JacobiLSA:
    """A left-symmetric algebroid with ``phi0`` (``delta phi0`` symmetric when valid)."""

    def __init__(self, lsa: LeftSymmetricAlgebroid, phi0: Cosection):
        if phi0.degree != 1 or phi0.rank != lsa.rank:
            raise ValueError("phi0 must be a 1-cosection on the same bundle")
        self.lsa = lsa
        self.phi0 = phi0

    @classmethod
    def checked(cls, lsa: LeftSymmetricAlgebroid, phi0: Cosection) -> "JacobiLSA":
        J = cls(lsa, phi0)
        report = check_lsa_axioms(lsa).add("sym_defect", _sym_defect(lsa, phi0))
        if not report.ok:
            raise StructureError("not a Jacobi-left-symmetric algebroid: " + ", ".join(report.failing()), report)
        return J

    @property
    def rank(self) -> int:
        return self.lsa.rank

    def sub_adjacent_jacobi(self) -> JacobiAlgebroid:
        return JacobiAlgebroid(self.lsa.commutator(), self.phi0)

    def __repr__(self):
        return f"JacobiLSA({self.lsa!r}, phi0={self.phi0!r})"


def cocycle_symmetry_report(S: LeftSymmetricAlgebroid, phi0: Cosection) -> DefectReport:
    sym = _sym_defect(S, phi0)
    d = dict(differential(S.commutator(), phi0).coeffs)
    ident = dict(sym)
    for k, v in d.items():
        _accumulate(ident, k, -v)
    return DefectReport().add("sym_defect", sym).add("dA_phi0", d).add("identity_defect", ident)


def jkv_bracket(J: JacobiLSA, h: SymmetricBivector) -> KVTensor:
    """``[[h,h]] + h(phi0, alpha) h(beta, gamma) - h(phi0, beta) h(alpha, gamma)``."""
    r = J.rank
    K = kv_bracket(J.lsa, h)
    hp = h.sharp(J.phi0)  # h(phi0, e^a) = hp[a]
    out = dict(K.coeffs)
    for a in range(r):
        for b in range(a + 1, r):
            for c in range(r):
                v = hp[a] * h.matrix[b][c] - hp[b] * h.matrix[a][c]
                _accumulate(out, (a, b, c), v)
    return KVTensor(r, out)


def twisted_dual_product(J: JacobiLSA, h: SymmetricBivector, alpha: Cosection, beta: Cosection) -> Cosection:
    """Closed form ``alpha .h beta + <phi0, h# alpha> beta - h(alpha, beta) phi0``."""
    base = dual_product(J.lsa, h, alpha, beta)
    return base + beta * pair(J.phi0, h.sharp(alpha)) - J.phi0 * h(alpha, beta)


def twisted_dual_product_definitional(
    J: JacobiLSA, h: SymmetricBivector, alpha: Cosection, beta: Cosection
) -> Cosection:
    """``L^{A,phi0}_{h# alpha} beta - R_{h# beta} alpha - d_{A,phi0} h(alpha, beta)``."""
    JA = J.sub_adjacent_jacobi()
    return (
        twisted_lie_derivative(JA, h.sharp(alpha), beta)
        - R_op(J.lsa, h.sharp(beta), alpha)
        - twisted_differential(JA, h(alpha, beta))
    )


def twisted_product_forms_report(J: JacobiLSA, h: SymmetricBivector, pairs=None) -> DefectReport:
    r = J.rank
    if pairs is None:
        pairs = [(_dual(r, a), _dual(r, b)) for a in range(r) for b in range(r)]
    out: dict = {}
    for n, (al, be) in enumerate(pairs):
        d = twisted_dual_product(J, h, al, be) - twisted_dual_product_definitional(J, h, al, be)
        for (k,), v in d.coeffs.items():
            _accumulate(out, (n, k), v)
    return DefectReport().add("closed_vs_definitional", out)


def twisted_leibniz_report(J: JacobiLSA, h: SymmetricBivector, alpha: Cosection, beta: Cosection, f) -> DefectReport:
    """Left Leibniz and right linearity of the twisted dual product for one ``f``."""
    f = f if isinstance(f, Scalar) else Scalar.const(f)
    p = twisted_dual_product(J, h, alpha, beta)
    left = (
        twisted_dual_product(J, h, alpha, beta * f)
        - p * f
        - beta * J.lsa.bundle.apply(h.sharp(alpha), f)
    )
    right = twisted_dual_product(J, h, alpha * f, beta) - p * f
    return DefectReport().add("left_leibniz", left).add("right_linear", right)


def twisted_sharp_identity(J: JacobiLSA, h: SymmetricBivector) -> DefectReport:
    """``[[h,h]]^phi0(alpha, ., beta) = h#(alpha .h,phi0 beta) - h# alpha . h# beta``."""
    r = J.rank
    K = jkv_bracket(J, h)
    out: dict = {}
    for a in range(r):
        for b in range(r):
            al, be = _dual(r, a), _dual(r, b)
            rhs = h.sharp(twisted_dual_product(J, h, al, be)) - ls_product(J.lsa, h.sharp(al), h.sharp(be))
            lhs = K.middle_section(al, be)
            for j in range(r):
                _accumulate(out, (a, b, j), lhs[j] - rhs[j])
    return DefectReport().add("twisted_sharp", out)


def build_dual_jlsa(J: JacobiLSA, h: SymmetricBivector) -> JacobiLSA:
    """Candidate ``(A*_{h,phi0}, -h# phi0)``; the section is a cosection of the dual."""
    base = build_dual_lsa(J.lsa, h)
    r = J.rank
    table = [[twisted_dual_product(J, h, _dual(r, a), _dual(r, b)).as_list() for b in range(r)] for a in range(r)]
    dual = LeftSymmetricAlgebroid(base.bundle, table)
    X0 = -h.sharp(J.phi0)
    return JacobiLSA(dual, Cosection.from_coeffs(X0.coeffs))


def dual_jlsa_report(J: JacobiLSA, h: SymmetricBivector) -> DefectReport:
    """Validity of the dual JLSA, with the proof identity as a cross-check.

    ``delta_dual(psi)(alpha, beta) = -(delta phi0)(h# alpha, h# beta)
    - [[h,h]]^phi0(alpha, phi0, beta)`` for ``psi = -h# phi0``.
    """
    D = build_dual_jlsa(J, h)
    report = check_lsa_axioms(D.lsa)
    r = J.rank
    sym = _sym_defect(D.lsa, D.phi0)
    K = jkv_bracket(J, h)
    ident: dict = {}
    for a in range(r):
        for b in range(r):
            al, be = _dual(r, a), _dual(r, b)
            lhs = delta_phi(D.lsa, D.phi0, D.lsa.frame(a), D.lsa.frame(b))
            rhs = -delta_phi(J.lsa, J.phi0, h.sharp(al), h.sharp(be)) - K(al, J.phi0, be)
            _accumulate(ident, (a, b), lhs - rhs)
    report.add("dual_sym_defect", sym)
    report.add("proof_identity", ident)
    return report
