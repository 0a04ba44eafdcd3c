"""Small dense matrices over Scalars (cofactor expansion; sizes stay tiny)."""

from __future__ import annotations

from typing import Sequence

from .scalar import Scalar

Matrix = list[list[Scalar]]

__all__ = ["Matrix", "SingularMatrixError", "det", "inverse", "matmul", "transpose", "is_symmetric", "is_antisymmetric"]


class SingularMatrixError(ValueError):
    pass


def _minor(M: Sequence[Sequence[Scalar]], row: int, col: int) -> Matrix:
    return [[M[i][j] for j in range(len(M)) if j != col] for i in range(len(M)) if i != row]


def det(M: Sequence[Sequence[Scalar]]) -> Scalar:
    n = len(M)
    if n == 0:
        return Scalar.one()
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    total = Scalar.zero()
    for j in range(n):
        if M[0][j].is_zero():
            continue
        term = M[0][j] * det(_minor(M, 0, j))
        total = total + term if j % 2 == 0 else total - term
    return total


def inverse(M: Sequence[Sequence[Scalar]]) -> Matrix:
    """Adjugate over determinant; the determinant must be invertible."""
    n = len(M)
    d = det(M)
    if d.is_zero():
        raise SingularMatrixError("matrix is singular")
    dinv = d.inverse()
    if n == 1:
        return [[dinv]]
    out = [[Scalar.zero()] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            c = det(_minor(M, i, j)) * dinv
            out[j][i] = c if (i + j) % 2 == 0 else -c
    return out


def matmul(A: Sequence[Sequence[Scalar]], B: Sequence[Sequence[Scalar]]) -> Matrix:
    inner = len(B)
    out = []
    for row in A:
        new = []
        for j in range(len(B[0])):
            s = Scalar.zero()
            for k in range(inner):
                if not row[k].is_zero() and not B[k][j].is_zero():
                    s = s + row[k] * B[k][j]
            new.append(s)
        out.append(new)
    return out


def transpose(M: Sequence[Sequence[Scalar]]) -> Matrix:
    return [list(col) for col in zip(*M)]


def is_symmetric(M: Sequence[Sequence[Scalar]]) -> bool:
    return all(M[i][j] == M[j][i] for i in range(len(M)) for j in range(i))


def is_antisymmetric(M: Sequence[Sequence[Scalar]]) -> bool:
    return all((M[i][j] + M[j][i]).is_zero() for i in range(len(M)) for j in range(i + 1)) if M else True
