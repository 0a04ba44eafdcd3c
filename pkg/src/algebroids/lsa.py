"""Left-symmetric algebroids, Koszul-Vinberg brackets and the dual product."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .defects import DefectReport, StructureError
from .lie import (
    AnchoredBundle,
    Connection,
    LieAlgebroid,
    Table,
    _scalar,
    _table_bracket,
    differential,
    direct_sum_line,
    freeze_table,
    lie_derivative,
)
from .linalg import SingularMatrixError, inverse
from .scalar import Scalar
from .tensors import Cosection, Section, _accumulate, pair, sort_sign

__all__ = [
    "LeftSymmetricAlgebroid",
    "SymmetricBivector",
    "Cochain",
    "KVTensor",
    "ls_product",
    "associator",
    "check_lsa_axioms",
    "sub_adjacent",
    "L_op",
    "R_op",
    "kv_bracket",
    "coboundary",
    "metric_cochain",
    "delta_g_check",
    "nondeg_equivalence_report",
    "dual_product",
    "sharp_compat_identity",
    "ls_obstruction_identity",
    "build_dual_lsa",
    "lsa_from_connection",
    "lsa_bar_nabla",
]


class LeftSymmetricAlgebroid:
    """Product table ``e_i . e_j = sum_k table[i][j][k] e_k`` plus anchor.

    The plain constructor accepts candidates; ``checked`` validates.
    """

    def __init__(self, bundle: AnchoredBundle, table):
        self.bundle = bundle
        self.table: Table = freeze_table(table, bundle.rank)

    @classmethod
    def checked(cls, bundle: AnchoredBundle, table) -> "LeftSymmetricAlgebroid":
        S = cls(bundle, table)
        report = check_lsa_axioms(S)
        if not report.ok:
            raise StructureError("not a left-symmetric algebroid: " + ", ".join(report.failing()), report)
        return S

    @property
    def rank(self) -> int:
        return self.bundle.rank

    @property
    def base_vars(self) -> tuple[str, ...]:
        return self.bundle.base_vars

    def frame(self, i: int) -> Section:
        return Section.basis(self.rank, i)

    def commutator(self) -> LieAlgebroid:
        """Sub-adjacent bracket without validation."""
        r = self.rank
        table = [[[self.table[i][j][k] - self.table[j][i][k] for k in range(r)] for j in range(r)] for i in range(r)]
        return LieAlgebroid(self.bundle, table)

    def __eq__(self, other):
        return isinstance(other, LeftSymmetricAlgebroid) and self.bundle == other.bundle and self.table == other.table

    def __hash__(self):
        return hash((self.bundle, self.table))

    def __repr__(self):
        return f"LeftSymmetricAlgebroid(base={self.base_vars}, rank={self.rank})"


@dataclass(frozen=True, eq=False)
class SymmetricBivector:
    """``h`` in ``Gamma(S^2 A)`` stored as its symmetric matrix ``h^{ij}``."""

    matrix: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(_scalar(v) for v in row) for row in self.matrix)
        n = len(m)
        if any(len(row) != n for row in m):
            raise ValueError("h must be a square matrix")
        for i in range(n):
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise ValueError("h must be symmetric")
        object.__setattr__(self, "matrix", m)

    @classmethod
    def zero(cls, rank: int) -> "SymmetricBivector":
        return cls(tuple(tuple(0 for _ in range(rank)) for _ in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def sharp(self, alpha: Cosection) -> Section:
        a = alpha.as_list()
        r = self.rank
        out = []
        for j in range(r):
            s = Scalar.zero()
            for i in range(r):
                if not a[i].is_zero() and not self.matrix[i][j].is_zero():
                    s = s + a[i] * self.matrix[i][j]
            out.append(s)
        return Section(tuple(out))

    def __call__(self, alpha: Cosection, beta: Cosection) -> Scalar:
        return pair(beta, self.sharp(alpha))

    def scaled(self, f) -> "SymmetricBivector":
        return SymmetricBivector(tuple(tuple(v * f for v in row) for row in self.matrix))

    def is_zero(self) -> bool:
        return all(v.is_zero() for row in self.matrix for v in row)

    def __eq__(self, other):
        return isinstance(other, SymmetricBivector) and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)


def _dual(rank: int, a: int) -> Cosection:
    return Cosection(rank, 1, {(a,): 1})


def ls_product(S: LeftSymmetricAlgebroid, X: Section, Y: Section) -> Section:
    out = _table_bracket(S.table, S.rank, X, Y)
    A = S.bundle
    return Section(tuple(out[k] + A.apply(X, Y[k]) for k in range(S.rank)))


def associator(S: LeftSymmetricAlgebroid, X: Section, Y: Section, Z: Section) -> Section:
    return ls_product(S, ls_product(S, X, Y), Z) - ls_product(S, X, ls_product(S, Y, Z))


def check_lsa_axioms(S: LeftSymmetricAlgebroid) -> DefectReport:
    r, A = S.rank, S.bundle
    assoc: dict = {}
    for i in range(r):
        for j in range(i + 1, r):
            for k in range(r):
                ei, ej, ek = S.frame(i), S.frame(j), S.frame(k)
                d = associator(S, ei, ej, ek) - associator(S, ej, ei, ek)
                for m, c in enumerate(d.coeffs):
                    _accumulate(assoc, (i, j, k, m), c)
    L = S.commutator()
    morph: dict = {}
    for i in range(r):
        for j in range(i + 1, r):
            lhs = A.vector_field(L.frame_bracket(i, j))
            for a in range(A.dim):
                rhs = A.derive(i, A.anchor[j][a]) - A.derive(j, A.anchor[i][a])
                _accumulate(morph, (i, j, a), lhs[a] - rhs)
    return DefectReport().add("associator_symmetry", assoc).add("anchor_morphism", morph)


def sub_adjacent(S: LeftSymmetricAlgebroid, validate: bool = True) -> LieAlgebroid:
    if validate:
        report = check_lsa_axioms(S)
        if not report.ok:
            raise StructureError("sub-adjacent algebroid of an invalid structure", report)
    return S.commutator()


def L_op(S: LeftSymmetricAlgebroid, X: Section, alpha: Cosection) -> Cosection:
    """``<L_X alpha, Y> = rho(X)<alpha, Y> - <alpha, X . Y>``."""
    r = S.rank
    out = []
    for k in range(r):
        ek = S.frame(k)
        out.append(S.bundle.apply(X, alpha.component((k,))) - pair(alpha, ls_product(S, X, ek)))
    return Cosection.from_coeffs(out)


def R_op(S: LeftSymmetricAlgebroid, X: Section, alpha: Cosection) -> Cosection:
    """``<R_X alpha, Y> = -<alpha, Y . X>``."""
    return Cosection.from_coeffs([-pair(alpha, ls_product(S, S.frame(k), X)) for k in range(S.rank)])


class KVTensor:
    """Element of ``Gamma(Lambda^2 A (x) A)``: skew in the first two slots."""

    def __init__(self, rank: int, coeffs: dict):
        self.rank = rank
        clean: dict = {}
        for (a, b, c), v in coeffs.items():
            if a == b:
                continue
            if a > b:
                a, b, v = b, a, -v
            _accumulate(clean, (a, b, c), v)
        self.coeffs = clean

    def component(self, a: int, b: int, c: int) -> Scalar:
        if a == b:
            return Scalar.zero()
        if a < b:
            return self.coeffs.get((a, b, c), Scalar.zero())
        v = self.coeffs.get((b, a, c))
        return Scalar.zero() if v is None else -v

    def __call__(self, alpha: Cosection, beta: Cosection, gamma: Cosection) -> Scalar:
        al, be, ga = alpha.as_list(), beta.as_list(), gamma.as_list()
        total = Scalar.zero()
        for (a, b, c), v in self.coeffs.items():
            w = al[a] * be[b] - al[b] * be[a]
            if not w.is_zero() and not ga[c].is_zero():
                total = total + v * w * ga[c]
        return total

    def middle_section(self, alpha: Cosection, beta: Cosection) -> Section:
        """The section ``K(alpha, ., beta)``."""
        return Section(tuple(self(alpha, _dual(self.rank, j), beta) for j in range(self.rank)))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, KVTensor) and self.rank == other.rank and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.rank, frozenset(self.coeffs.items())))

    def __sub__(self, other: "KVTensor") -> "KVTensor":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            _accumulate(out, k, -v)
        return KVTensor(self.rank, out)

    def scaled(self, f) -> "KVTensor":
        return KVTensor(self.rank, {k: v * f for k, v in self.coeffs.items()})

    def __repr__(self):
        return f"KVTensor(rank={self.rank}, {self.coeffs})"


def kv_bracket(S: LeftSymmetricAlgebroid, h: SymmetricBivector) -> KVTensor:
    """The five-term ``[[h, h]]`` on dual-frame triples."""
    r, A = S.rank, S.bundle
    L = S.commutator()
    sharps = [h.sharp(_dual(r, a)) for a in range(r)]
    prods = {(b, c): ls_product(S, sharps[b], sharps[c]) for b in range(r) for c in range(r)}
    out: dict = {}
    for a in range(r):
        for b in range(a + 1, r):
            br = _lie(L, sharps[a], sharps[b])
            for c in range(r):
                v = (
                    A.apply(sharps[a], h.matrix[b][c])
                    - A.apply(sharps[b], h.matrix[a][c])
                    + prods[(b, c)][a]
                    - prods[(a, c)][b]
                    - br[c]
                )
                _accumulate(out, (a, b, c), v)
    return KVTensor(r, out)


def _lie(L: LieAlgebroid, X: Section, Y: Section) -> Section:
    from .lie import lie_bracket

    return lie_bracket(L, X, Y)


class Cochain:
    """Element of ``C^k = Gamma(Lambda^{k-1} A* (x) A*)``.

    Keys are ``(I, j)`` with ``I`` a strictly increasing ``(k-1)``-tuple.
    """

    def __init__(self, rank: int, degree: int, coeffs: dict):
        if degree < 1:
            raise ValueError("cochains start in degree 1")
        self.rank, self.degree = rank, degree
        clean: dict = {}
        for (I, j), v in coeffs.items():
            I = tuple(I)
            if len(I) != degree - 1:
                raise ValueError("cochain key has the wrong length")
            sign, K = sort_sign(I)
            if sign == 0:
                continue
            v = _scalar(v)
            _accumulate(clean, (K, j), v if sign > 0 else -v)
        self.coeffs = clean

    def component(self, I: Sequence[int], j: int) -> Scalar:
        sign, K = sort_sign(I)
        if sign == 0:
            return Scalar.zero()
        v = self.coeffs.get((K, j))
        if v is None:
            return Scalar.zero()
        return v if sign > 0 else -v

    def is_zero(self) -> bool:
        return not self.coeffs

    def entries(self) -> dict:
        return {I + (j,): v for (I, j), v in self.coeffs.items()}

    def __eq__(self, other):
        return isinstance(other, Cochain) and (self.rank, self.degree, self.coeffs) == (other.rank, other.degree, other.coeffs)

    def __hash__(self):
        return hash((self.rank, self.degree, frozenset(self.coeffs.items())))

    def __repr__(self):
        return f"Cochain(rank={self.rank}, degree={self.degree}, {self.coeffs})"

    @classmethod
    def from_cosection(cls, phi: Cosection) -> "Cochain":
        return cls(phi.rank, 1, {((), j): v for (j,), v in phi.coeffs.items()})


def coboundary(S: LeftSymmetricAlgebroid, omega: Cochain) -> Cochain:
    """``delta_A``, evaluated on frame tuples."""
    if isinstance(omega, Cosection):
        omega = Cochain.from_cosection(omega)
    r, k = S.rank, omega.degree
    A = S.bundle
    c = S.commutator().table
    b = S.table
    out: dict = {}
    for I in combinations(range(r), k):
        for last in range(r):
            total = Scalar.zero()
            for i in range(k):
                rest = I[:i] + I[i + 1:]
                v = omega.component(rest, last)
                if not v.is_zero():
                    d = A.derive(I[i], v)
                    total = total + d if i % 2 == 0 else total - d
                for l, bc in enumerate(b[I[i]][last]):
                    if bc.is_zero():
                        continue
                    w = omega.component(rest, l)
                    if not w.is_zero():
                        term = bc * w
                        total = total - term if i % 2 == 0 else total + term
            for i in range(k):
                for j in range(i + 1, k):
                    rest = I[:i] + I[i + 1:j] + I[j + 1:]
                    for l, cc in enumerate(c[I[i]][I[j]]):
                        if cc.is_zero():
                            continue
                        w = omega.component((l,) + rest, last)
                        if not w.is_zero():
                            term = cc * w
                            total = total + term if (i + j) % 2 == 0 else total - term
            if not total.is_zero():
                out[(I, last)] = total
    return Cochain(r, k + 1, out)


def metric_cochain(g: Sequence[Sequence[Scalar]]) -> Cochain:
    """A symmetric ``(0,2)`` tensor as an element of ``C^2``."""
    r = len(g)
    return Cochain(r, 2, {((i,), j): g[i][j] for i in range(r) for j in range(r)})


def delta_g_check(S: LeftSymmetricAlgebroid, g) -> DefectReport:
    if not isinstance(g, Cochain):
        g = metric_cochain(g)
    return DefectReport().add("delta_g", coboundary(S, g).entries())


def nondeg_equivalence_report(S: LeftSymmetricAlgebroid, h: SymmetricBivector) -> DefectReport:
    """``[[h,h]]`` and ``delta_A g`` for ``g_flat = (h#)^{-1}``; they must vanish together."""
    try:
        g = inverse([list(row) for row in h.matrix])
    except SingularMatrixError as exc:
        raise SingularMatrixError("h is degenerate") from exc
    K = kv_bracket(S, h)
    dg = coboundary(S, metric_cochain(g))
    report = DefectReport().add("kv_bracket", K.coeffs).add("delta_g", dg.entries())
    report.require("equivalent", K.is_zero() == dg.is_zero())
    return report


def dual_product(S: LeftSymmetricAlgebroid, h: SymmetricBivector, alpha: Cosection, beta: Cosection) -> Cosection:
    """``L^A_{h# alpha} beta - R_{h# beta} alpha - d_A h(alpha, beta)`` (sub-adjacent calculus)."""
    L = S.commutator()
    return (
        lie_derivative(L, h.sharp(alpha), beta)
        - R_op(S, h.sharp(beta), alpha)
        - differential(L, h(alpha, beta))
    )


def sharp_compat_identity(S: LeftSymmetricAlgebroid, h: SymmetricBivector) -> DefectReport:
    """``[[h,h]](alpha, ., beta) = h#(alpha .h beta) - h# alpha . h# beta``."""
    r = S.rank
    K = kv_bracket(S, h)
    out: dict = {}
    for a in range(r):
        for b in range(r):
            al, be = _dual(r, a), _dual(r, b)
            rhs = h.sharp(dual_product(S, h, al, be)) - ls_product(S, h.sharp(al), h.sharp(be))
            lhs = K.middle_section(al, be)
            for j in range(r):
                _accumulate(out, (a, b, j), lhs[j] - rhs[j])
    return DefectReport().add("sharp_compat", out)


def ls_obstruction_identity(S: LeftSymmetricAlgebroid, h: SymmetricBivector) -> DefectReport:
    """Associator skew of ``.h`` against its ``[[h,h]]`` expression, on frames."""
    r = S.rank
    K = kv_bracket(S, h)
    L = S.commutator()
    duals = [_dual(r, a) for a in range(r)]
    prod = {(a, b): dual_product(S, h, duals[a], duals[b]) for a in range(r) for b in range(r)}

    def dp(x: Cosection, y: Cosection) -> Cosection:
        return dual_product(S, h, x, y)

    out: dict = {}
    for a in range(r):
        for b in range(a + 1, r):
            al, be = duals[a], duals[b]
            for c in range(r):
                ga = duals[c]
                lhs = (dp(prod[(a, b)], ga) - dp(al, prod[(b, c)])) - (dp(prod[(b, a)], ga) - dp(be, prod[(a, c)]))
                Y = K.middle_section(al, be) - K.middle_section(be, al)
                lie_term = lie_derivative(L, Y, ga)
                for k in range(r):
                    X = S.frame(k)
                    rhs = (
                        pair(lie_term, X)
                        + K(be, L_op(S, X, al), ga)
                        - K(al, L_op(S, X, be), ga)
                    )
                    _accumulate(out, (a, b, c, k), pair(lhs, X) - rhs)
    return DefectReport().add("ls_obstruction", out)


def build_dual_lsa(S: LeftSymmetricAlgebroid, h: SymmetricBivector) -> LeftSymmetricAlgebroid:
    r, A = S.rank, S.bundle
    anchor = [A.vector_field(h.sharp(_dual(r, a))) for a in range(r)]
    table = [[dual_product(S, h, _dual(r, a), _dual(r, b)).as_list() for b in range(r)] for a in range(r)]
    return LeftSymmetricAlgebroid(AnchoredBundle(A.base_vars, r, anchor), table)


def lsa_from_connection(C: Connection) -> LeftSymmetricAlgebroid:
    torsion, curvature = C.torsion(), C.curvature()
    if torsion or curvature:
        report = DefectReport().add("torsion", torsion).add("curvature", curvature)
        raise StructureError("connection must be flat and torsion-free", report)
    return LeftSymmetricAlgebroid(C.algebroid.bundle, C.table)


def lsa_bar_nabla(L: LieAlgebroid, C: Connection) -> LeftSymmetricAlgebroid:
    """``bar nabla_{(X,f)}(Y,g) = (nabla_X Y, rho(X) g)`` on ``A + R``."""
    base = lsa_from_connection(C)
    big = direct_sum_line(L)
    r = L.rank
    z = Scalar.zero()
    table = [[[z] * (r + 1) for _ in range(r + 1)] for _ in range(r + 1)]
    for i in range(r):
        for j in range(r):
            table[i][j][:r] = base.table[i][j]
    return LeftSymmetricAlgebroid(big.bundle, table)
