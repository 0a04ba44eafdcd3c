"""Anchored bundles, Lie algebroids and their exterior calculus.

Conventions
-----------
* ``anchor[i][a]`` is the ``x^a`` component of ``rho(e_i)``.
* ``table[i][j][k]`` is ``c_ij^k`` with ``[e_i, e_j] = sum_k c_ij^k e_k``.
* The Schouten bracket is the Gerstenhaber-sign extension of the section
  bracket: ``[X, f] = rho(X) f`` and
  ``[P, Q ^ R] = [P, Q] ^ R + (-1)^{(|P|-1)|Q|} Q ^ [P, R]``.
  With this choice ``1/2 [pi, pi](xi, eta, .) = [pi# xi, pi# eta] - pi#[xi, eta]_pi``
  holds verbatim for every bivector.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .defects import DefectReport, StructureError
from .linalg import SingularMatrixError, det, inverse
from .scalar import LINE_VAR, Scalar
from .tensors import Cosection, Multisection, Section, _accumulate, interior_product, sort_sign

__all__ = [
    "AnchoredBundle",
    "LieAlgebroid",
    "Connection",
    "anchor_apply",
    "lie_bracket",
    "check_lie_axioms",
    "schouten_bracket",
    "differential",
    "lie_derivative",
    "presymplectic_check",
    "symplectic_check",
    "direct_sum_line",
    "tangent_algebroid",
    "form_matrix",
    "zero_table",
    "freeze_table",
]

Table = tuple[tuple[tuple[Scalar, ...], ...], ...]


def _scalar(v) -> Scalar:
    return v if isinstance(v, Scalar) else Scalar.const(v)


def freeze_table(table, rank: int) -> Table:
    """Normalize a nested ``r x r x r`` table and check its shape."""
    if len(table) != rank or any(len(row) != rank for row in table):
        raise ValueError(f"table must be {rank}x{rank} of rank-{rank} vectors")
    out = []
    for row in table:
        new_row = []
        for vec in row:
            if len(vec) != rank:
                raise ValueError(f"table entries must have length {rank}")
            new_row.append(tuple(_scalar(c) for c in vec))
        out.append(tuple(new_row))
    return tuple(out)


def zero_table(rank: int) -> Table:
    z = Scalar.zero()
    return tuple(tuple(tuple(z for _ in range(rank)) for _ in range(rank)) for _ in range(rank))


@dataclass(frozen=True, eq=False)
class AnchoredBundle:
    base_vars: tuple[str, ...]
    rank: int
    anchor: tuple[tuple[Scalar, ...], ...]

    def __post_init__(self):
        base = tuple(self.base_vars)
        if len(set(base)) != len(base):
            raise ValueError("base variables must be distinct")
        object.__setattr__(self, "base_vars", base)
        if len(self.anchor) != self.rank or any(len(row) != len(base) for row in self.anchor):
            raise ValueError(f"anchor must have {self.rank} rows of length {len(base)}")
        rows = tuple(tuple(_scalar(c) for c in row) for row in self.anchor)
        object.__setattr__(self, "anchor", rows)
        allowed = set(base)
        for row in rows:
            for c in row:
                if not self.is_line_bundle and not c.is_exp_free():
                    raise ValueError("exponential anchor entries need t among the base variables")
                extra = c.free_variables() - allowed
                if extra:
                    raise ValueError(f"anchor mentions unknown variables {sorted(extra)}")

    @property
    def dim(self) -> int:
        return len(self.base_vars)

    @property
    def is_line_bundle(self) -> bool:
        return LINE_VAR in self.base_vars

    @cached_property
    def _active(self) -> tuple[tuple[tuple[str, Scalar], ...], ...]:
        return tuple(
            tuple((v, c) for v, c in zip(self.base_vars, row) if not c.is_zero()) for row in self.anchor
        )

    def derive(self, i: int, f: Scalar) -> Scalar:
        """``rho(e_i) f``."""
        total = Scalar.zero()
        for v, c in self._active[i]:
            df = f.diff(v)
            if not df.is_zero():
                total = total + c * df
        return total

    def vector_field(self, X: Section) -> list[Scalar]:
        out = [Scalar.zero()] * self.dim
        for i, x in enumerate(X.coeffs):
            if x.is_zero():
                continue
            for a, c in enumerate(self.anchor[i]):
                if not c.is_zero():
                    out[a] = out[a] + x * c
        return out

    def apply(self, X: Section, f: Scalar) -> Scalar:
        """``rho(X) f``."""
        total = Scalar.zero()
        for i, x in enumerate(X.coeffs):
            if not x.is_zero():
                d = self.derive(i, f)
                if not d.is_zero():
                    total = total + x * d
        return total

    def same_shape(self, other: "AnchoredBundle") -> bool:
        return self.base_vars == other.base_vars and self.rank == other.rank

    def __eq__(self, other):
        return isinstance(other, AnchoredBundle) and self.base_vars == other.base_vars and self.anchor == other.anchor

    def __hash__(self):
        return hash((self.base_vars, self.anchor))


def anchor_apply(A: AnchoredBundle, X: Section, f) -> Scalar:
    A = getattr(A, "bundle", A)
    f = _scalar(f)
    extra = f.free_variables() - set(A.base_vars)
    if extra:
        raise ValueError(f"function mentions variables {sorted(extra)} outside the base")
    if X.rank != A.rank:
        raise ValueError("section rank does not match the bundle")
    return A.apply(X, f)


class LieAlgebroid:
    """Bracket table plus anchor.

    The plain constructor accepts candidates; ``LieAlgebroid.checked``
    additionally runs :func:`check_lie_axioms`.
    """

    def __init__(self, bundle: AnchoredBundle, table):
        self.bundle = bundle
        self.table: Table = freeze_table(table, bundle.rank)

    @classmethod
    def checked(cls, bundle: AnchoredBundle, table) -> "LieAlgebroid":
        L = cls(bundle, table)
        report = check_lie_axioms(L)
        if not report.ok:
            raise StructureError("not a Lie algebroid: " + ", ".join(report.failing()), report)
        return L

    @property
    def rank(self) -> int:
        return self.bundle.rank

    @property
    def base_vars(self) -> tuple[str, ...]:
        return self.bundle.base_vars

    def derive(self, i: int, f: Scalar) -> Scalar:
        return self.bundle.derive(i, f)

    def frame(self, i: int) -> Section:
        return Section.basis(self.rank, i)

    def frame_bracket(self, i: int, j: int) -> Section:
        return Section(self.table[i][j])

    def __eq__(self, other):
        return isinstance(other, LieAlgebroid) and self.bundle == other.bundle and self.table == other.table

    def __hash__(self):
        return hash((self.bundle, self.table))

    def __repr__(self):
        return f"LieAlgebroid(base={self.base_vars}, rank={self.rank})"


def tangent_algebroid(base_vars: Sequence[str]) -> LieAlgebroid:
    """``TM`` of a coordinate patch in the coordinate frame."""
    n = len(base_vars)
    anchor = [[1 if a == i else 0 for a in range(n)] for i in range(n)]
    return LieAlgebroid(AnchoredBundle(tuple(base_vars), n, anchor), zero_table(n))


def _table_bracket(table: Table, rank: int, X: Section, Y: Section) -> list[Scalar]:
    out = [Scalar.zero()] * rank
    for i, x in enumerate(X.coeffs):
        if x.is_zero():
            continue
        for j, y in enumerate(Y.coeffs):
            if y.is_zero():
                continue
            xy = x * y
            for k, c in enumerate(table[i][j]):
                if not c.is_zero():
                    out[k] = out[k] + xy * c
    return out


def lie_bracket(L: LieAlgebroid, X: Section, Y: Section) -> Section:
    out = _table_bracket(L.table, L.rank, X, Y)
    A = L.bundle
    for k in range(L.rank):
        a = A.apply(X, Y[k])
        b = A.apply(Y, X[k])
        out[k] = out[k] + a - b
    return Section(tuple(out))


def check_lie_axioms(L: LieAlgebroid) -> DefectReport:
    r, A = L.rank, L.bundle
    antisym = {}
    for i in range(r):
        for j in range(i, r):
            for k in range(r):
                _accumulate(antisym, (i, j, k), L.table[i][j][k] + L.table[j][i][k])
    jac = {}
    for i in range(r):
        for j in range(i + 1, r):
            for k in range(j + 1, r):
                ei, ej, ek = L.frame(i), L.frame(j), L.frame(k)
                J = (
                    lie_bracket(L, lie_bracket(L, ei, ej), ek)
                    + lie_bracket(L, lie_bracket(L, ej, ek), ei)
                    + lie_bracket(L, lie_bracket(L, ek, ei), ej)
                )
                for m, c in enumerate(J.coeffs):
                    _accumulate(jac, (i, j, k, m), c)
    morph = {}
    for i in range(r):
        for j in range(i + 1, r):
            lhs = A.vector_field(L.frame_bracket(i, j))
            for a in range(A.dim):
                rhs = A.derive(i, A.anchor[j][a]) - A.derive(j, A.anchor[i][a])
                _accumulate(morph, (i, j, a), lhs[a] - rhs)
    report = DefectReport()
    report.add("antisymmetry", antisym)
    report.add("jacobi", jac)
    report.add("anchor_morphism", morph)
    return report


def _schouten_monomial(L: LieAlgebroid, f: Scalar, I: tuple, g: Scalar, J: tuple, out: dict) -> None:
    """Accumulate ``[f e_I, g e_J]`` into ``out``."""
    m = len(I)
    if m and not g.is_constant():
        for p, ip in enumerate(I):
            c = L.derive(ip, g)
            if c.is_zero():
                continue
            sign, K = sort_sign(I[:p] + I[p + 1:] + J)
            if sign:
                term = f * c
                _accumulate(out, K, term if sign * (-1) ** (m - 1 - p) > 0 else -term)
    for q, jq in enumerate(J):
        inner = []
        for p, ip in enumerate(I):
            for k, c in enumerate(L.table[ip][jq]):
                if not c.is_zero():
                    inner.append((f * c, I[:p] + (k,) + I[p + 1:]))
        if not f.is_constant():
            rf = L.derive(jq, f)
            if not rf.is_zero():
                inner.append((-rf, I))
        sq = -1 if ((m - 1) * q) % 2 else 1
        for coef, idx in inner:
            sign, K = sort_sign(J[:q] + idx + J[q + 1:])
            if sign:
                term = g * coef
                _accumulate(out, K, term if sign * sq > 0 else -term)


def _as_multi(D) -> Multisection:
    if isinstance(D, Section):
        return D.as_multisection()
    if isinstance(D, Multisection):
        return D
    raise TypeError(f"expected a multisection, got {type(D).__name__}")


def schouten_bracket(L: LieAlgebroid, D1, D2) -> Multisection:
    D1, D2 = _as_multi(D1), _as_multi(D2)
    if D1.rank != L.rank or D2.rank != L.rank:
        raise ValueError("multisections live on a different bundle")
    degree = D1.degree + D2.degree - 1
    if degree < 0:
        raise ValueError("the bracket of two functions has negative degree")
    out: dict = {}
    for I, f in D1.coeffs.items():
        for J, g in D2.coeffs.items():
            _schouten_monomial(L, f, I, g, J, out)
    return Multisection(L.rank, degree, out)


def differential(L: LieAlgebroid, omega) -> Cosection:
    """``d_A`` evaluated on increasing frame tuples."""
    if isinstance(omega, Scalar) or not isinstance(omega, Cosection):
        omega = Cosection.scalar(L.rank, _scalar(omega))
    k, r = omega.degree, L.rank
    out: dict = {}
    if k + 1 > r:
        return Cosection(r, k + 1, {})
    from itertools import combinations

    for K in combinations(range(r), k + 1):
        total = Scalar.zero()
        for a in range(k + 1):
            val = omega.component(K[:a] + K[a + 1:])
            if not val.is_zero():
                d = L.derive(K[a], val)
                total = total + d if a % 2 == 0 else total - d
        for a in range(k + 1):
            for b in range(a + 1, k + 1):
                rest = K[:a] + K[a + 1:b] + K[b + 1:]
                for l, c in enumerate(L.table[K[a]][K[b]]):
                    if c.is_zero():
                        continue
                    val = omega.component((l,) + rest)
                    if not val.is_zero():
                        term = c * val
                        total = total + term if (a + b) % 2 == 0 else total - term
        if not total.is_zero():
            out[K] = total
    return Cosection(r, k + 1, out)


def lie_derivative(L: LieAlgebroid, X: Section, T):
    """Cartan formula on cosections, Schouten bracket on multisections."""
    if isinstance(T, Cosection):
        if T.degree == 0:
            return Cosection.scalar(L.rank, L.bundle.apply(X, T.component(())))
        return differential(L, interior_product(X, T)) + interior_product(X, differential(L, T))
    return schouten_bracket(L, X, T)


def form_matrix(omega: Cosection) -> list[list[Scalar]]:
    """``M[i][j] = omega(e_i, e_j)`` for a 2-cosection (or 2-multisection)."""
    r = omega.rank
    return [[omega.component((i, j)) for j in range(r)] for i in range(r)]


def presymplectic_check(L: LieAlgebroid, omega: Cosection) -> DefectReport:
    if omega.degree != 2:
        raise ValueError("a presymplectic structure has degree 2")
    return DefectReport().add("closed", differential(L, omega))


def symplectic_check(L: LieAlgebroid, omega: Cosection) -> DefectReport:
    report = presymplectic_check(L, omega)
    report.require("nondegenerate", not det(form_matrix(omega)).is_zero())
    return report


def direct_sum_line(L: LieAlgebroid) -> LieAlgebroid:
    """``A + R`` with the unit line section appended as the last frame vector."""
    r = L.rank
    z = Scalar.zero()
    anchor = [list(row) for row in L.bundle.anchor] + [[z] * L.bundle.dim]
    table = [[[z] * (r + 1) for _ in range(r + 1)] for _ in range(r + 1)]
    for i in range(r):
        for j in range(r):
            table[i][j][:r] = L.table[i][j]
    return LieAlgebroid(AnchoredBundle(L.base_vars, r + 1, anchor), table)


class Connection:
    """``nabla_{e_i} e_j = sum_k table[i][j][k] e_k`` on a Lie algebroid."""

    def __init__(self, algebroid: LieAlgebroid, table):
        self.algebroid = algebroid
        self.table: Table = freeze_table(table, algebroid.rank)

    @property
    def rank(self) -> int:
        return self.algebroid.rank

    def apply(self, X: Section, Y: Section) -> Section:
        out = _table_bracket(self.table, self.rank, X, Y)
        A = self.algebroid.bundle
        return Section(tuple(out[k] + A.apply(X, Y[k]) for k in range(self.rank)))

    def torsion(self) -> dict:
        r, c = self.rank, self.algebroid.table
        out: dict = {}
        for i in range(r):
            for j in range(i + 1, r):
                for k in range(r):
                    _accumulate(out, (i, j, k), self.table[i][j][k] - self.table[j][i][k] - c[i][j][k])
        return out

    def curvature(self) -> dict:
        r, L = self.rank, self.algebroid
        out: dict = {}
        for i in range(r):
            for j in range(i + 1, r):
                ei, ej = L.frame(i), L.frame(j)
                bij = lie_bracket(L, ei, ej)
                for l in range(r):
                    el = L.frame(l)
                    R = self.apply(ei, self.apply(ej, el)) - self.apply(ej, self.apply(ei, el)) - self.apply(bij, el)
                    for k, v in enumerate(R.coeffs):
                        _accumulate(out, (i, j, l, k), v)
        return out

    def is_torsion_free(self) -> bool:
        return not self.torsion()

    def is_flat(self) -> bool:
        return not self.curvature()

    def covariant_form(self, g: Sequence[Sequence[Scalar]]) -> dict:
        """``(nabla_{e_i} g)(e_j, e_l)`` as ``{(i, j, l): value}``."""
        r, L = self.rank, self.algebroid
        out = {}
        for i in range(r):
            for j in range(r):
                for l in range(r):
                    v = L.derive(i, g[j][l])
                    for m in range(r):
                        a = self.table[i][j][m]
                        if not a.is_zero():
                            v = v - a * g[m][l]
                        b = self.table[i][l][m]
                        if not b.is_zero():
                            v = v - b * g[j][m]
                    out[(i, j, l)] = v
        return out

    def dual_connection(self, g: Sequence[Sequence[Scalar]]) -> "Connection":
        r, L = self.rank, self.algebroid
        g = [[_scalar(v) for v in row] for row in g]
        try:
            ginv = inverse(g)
        except SingularMatrixError as exc:
            raise SingularMatrixError("dual connection needs a nondegenerate metric") from exc
        table = [[[Scalar.zero()] * r for _ in range(r)] for _ in range(r)]
        for i in range(r):
            for l in range(r):
                rhs = []
                for j in range(r):
                    v = L.derive(i, g[j][l])
                    for m in range(r):
                        if not self.table[i][j][m].is_zero():
                            v = v - self.table[i][j][m] * g[m][l]
                    rhs.append(v)
                for k in range(r):
                    s = Scalar.zero()
                    for j in range(r):
                        if not ginv[k][j].is_zero() and not rhs[j].is_zero():
                            s = s + ginv[k][j] * rhs[j]
                    table[i][l][k] = s
        return Connection(L, table)
