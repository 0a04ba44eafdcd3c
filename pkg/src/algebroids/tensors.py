"""Frame-coefficient tensors: sections, multisections and cosections.

Everything lives over a fixed global frame ``e_1..e_r`` (0-based in code)
and its dual frame.  Alternating tensors store one coefficient per
strictly increasing index tuple; the pairing convention is the
determinant one, ``(e^1 ^ e^2)(e_1, e_2) = 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .scalar import Scalar

__all__ = [
    "Section",
    "Multisection",
    "Cosection",
    "sort_sign",
    "wedge",
    "interior_product",
    "pair",
    "evaluate",
]


def sort_sign(idx: Sequence[int]) -> tuple[int, tuple[int, ...]]:
    """Sign of the permutation sorting ``idx`` (0 if an index repeats)."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, ()
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


def _zero() -> Scalar:
    return Scalar.zero()


def _accumulate(target: dict, key, value: Scalar) -> None:
    if value.is_zero():
        return
    if key in target:
        s = target[key] + value
        if s.is_zero():
            del target[key]
        else:
            target[key] = s
    else:
        target[key] = value


@dataclass(frozen=True, eq=False)
class Section:
    """``X = sum_i X^i e_i``."""

    coeffs: tuple[Scalar, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(c if isinstance(c, Scalar) else Scalar.const(c) for c in self.coeffs))

    @classmethod
    def zero(cls, rank: int) -> "Section":
        return cls(tuple(_zero() for _ in range(rank)))

    @classmethod
    def basis(cls, rank: int, i: int) -> "Section":
        return cls(tuple(Scalar.one() if j == i else _zero() for j in range(rank)))

    @property
    def rank(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Scalar:
        return self.coeffs[i]

    def __iter__(self):
        return iter(self.coeffs)

    def __add__(self, other: "Section") -> "Section":
        return Section(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Section") -> "Section":
        return Section(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Section":
        return Section(tuple(-a for a in self.coeffs))

    def __mul__(self, f) -> "Section":
        return Section(tuple(a * f for a in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, Section) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def diff(self, var: str) -> "Section":
        return Section(tuple(c.diff(var) for c in self.coeffs))

    def as_multisection(self) -> "Multisection":
        return Multisection(self.rank, 1, {(i,): c for i, c in enumerate(self.coeffs) if not c.is_zero()})

    def __repr__(self):
        return "Section(" + ", ".join(str(c) for c in self.coeffs) + ")"


@dataclass(frozen=True, eq=False)
class _Alternating:
    rank: int
    degree: int
    coeffs: Mapping[tuple[int, ...], Scalar] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for key, value in dict(self.coeffs).items():
            if not isinstance(value, Scalar):
                value = Scalar.const(value)
            if len(key) != self.degree:
                raise ValueError(f"index {key} does not match degree {self.degree}")
            if any(i < 0 or i >= self.rank for i in key):
                raise ValueError(f"index {key} out of range for rank {self.rank}")
            sign, skey = sort_sign(key)
            if sign == 0:
                continue
            _accumulate(clean, skey, value if sign > 0 else -value)
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def scalar(cls, rank: int, f) -> "_Alternating":
        return cls(rank, 0, {(): f})

    @classmethod
    def zero(cls, rank: int, degree: int) -> "_Alternating":
        return cls(rank, degree, {})

    def _like(self, degree: int, coeffs: Mapping) -> "_Alternating":
        return type(self)(self.rank, degree, coeffs)

    def component(self, idx: Sequence[int]) -> Scalar:
        """Coefficient for an arbitrary (unsorted) index tuple."""
        sign, key = sort_sign(idx)
        if sign == 0:
            return _zero()
        value = self.coeffs.get(key)
        if value is None:
            return _zero()
        return value if sign > 0 else -value

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other) -> None:
        if type(other) is not type(self) or other.rank != self.rank or other.degree != self.degree:
            raise TypeError(f"incompatible operands {self!r} and {other!r}")

    def __add__(self, other):
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            _accumulate(out, k, v)
        return self._like(self.degree, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return self._like(self.degree, {k: -v for k, v in self.coeffs.items()})

    def __mul__(self, f):
        if isinstance(f, _Alternating):
            return NotImplemented
        return self._like(self.degree, {k: v * f for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            type(other) is type(self)
            and other.rank == self.rank
            and other.degree == self.degree
            and dict(self.coeffs) == dict(other.coeffs)
        )

    def __hash__(self):
        return hash((type(self).__name__, self.rank, self.degree, frozenset(self.coeffs.items())))

    def diff(self, var: str):
        return self._like(self.degree, {k: v.diff(var) for k, v in self.coeffs.items()})

    def __repr__(self):
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.coeffs.items()))
        return f"{type(self).__name__}(rank={self.rank}, degree={self.degree}, {{{body}}})"


class Multisection(_Alternating):
    """Element of ``Gamma(Lambda^k A)``."""

    @classmethod
    def from_section(cls, X: Section) -> "Multisection":
        return X.as_multisection()

    def as_section(self) -> Section:
        if self.degree != 1:
            raise ValueError("only degree-1 multisections are sections")
        return Section(tuple(self.component((i,)) for i in range(self.rank)))


class Cosection(_Alternating):
    """Element of ``Gamma(Lambda^k A*)``."""

    @classmethod
    def from_coeffs(cls, coeffs: Iterable) -> "Cosection":
        coeffs = list(coeffs)
        return cls(len(coeffs), 1, {(i,): c for i, c in enumerate(coeffs)})

    def as_list(self) -> list[Scalar]:
        if self.degree != 1:
            raise ValueError("only degree-1 cosections have a coefficient list")
        return [self.component((i,)) for i in range(self.rank)]


def _as_alternating(u):
    if isinstance(u, Section):
        return u.as_multisection()
    return u


def wedge(u, v):
    """Exterior product of two multisections or two cosections.

    Degree-0 operands act by multiplication.
    """
    u, v = _as_alternating(u), _as_alternating(v)
    if type(u) is not type(v) or u.rank != v.rank:
        raise TypeError("wedge needs two tensors of the same kind over the same bundle")
    out: dict = {}
    for I, f in u.coeffs.items():
        for J, g in v.coeffs.items():
            sign, K = sort_sign(I + J)
            if sign:
                _accumulate(out, K, f * g if sign > 0 else -(f * g))
    return type(u)(u.rank, u.degree + v.degree, out)


def _contract(coeffs: Sequence[Scalar], D: _Alternating) -> _Alternating:
    out: dict = {}
    for I, f in D.coeffs.items():
        for p, i in enumerate(I):
            c = coeffs[i]
            if c.is_zero():
                continue
            term = c * f
            _accumulate(out, I[:p] + I[p + 1:], term if p % 2 == 0 else -term)
    return type(D)(D.rank, D.degree - 1, out)


def interior_product(a, D):
    """Contraction in the first slot.

    ``a`` is a degree-1 cosection acting on a multisection, or a section
    acting on a cosection.
    """
    if D.degree < 1:
        raise ValueError("interior product of a degree-0 tensor")
    if isinstance(D, Multisection):
        if not (isinstance(a, Cosection) and a.degree == 1):
            raise TypeError("multisections are contracted with a degree-1 cosection")
        return _contract(a.as_list(), D)
    if isinstance(D, Cosection):
        if isinstance(a, Multisection):
            a = a.as_section()
        if not isinstance(a, Section):
            raise TypeError("cosections are contracted with a section")
        return _contract(a.coeffs, D)
    raise TypeError(f"cannot contract into {D!r}")


def pair(alpha: Cosection, X: Section) -> Scalar:
    """``<alpha, X>`` for a degree-1 cosection and a section."""
    total = _zero()
    for (i,), c in alpha.coeffs.items():
        if not X[i].is_zero():
            total = total + c * X[i]
    return total


def _det_pairing(args_coeffs: Sequence[Sequence[Scalar]], idx: tuple[int, ...]) -> Scalar:
    k = len(idx)
    total = _zero()
    for perm in permutations(range(k)):
        sign, _ = sort_sign(perm)
        term = Scalar.one()
        for a, b in enumerate(perm):
            term = term * args_coeffs[a][idx[b]]
            if term.is_zero():
                break
        if not term.is_zero():
            total = total + (term if sign > 0 else -term)
    return total


def evaluate(T: _Alternating, *args) -> Scalar:
    """Evaluate an alternating tensor on ``degree`` arguments of the dual kind."""
    if len(args) != T.degree:
        raise ValueError(f"expected {T.degree} arguments, got {len(args)}")
    if T.degree == 0:
        return T.component(())
    coeffs = []
    for a in args:
        if isinstance(a, Section):
            coeffs.append(a.coeffs)
        elif isinstance(a, Cosection) and a.degree == 1:
            coeffs.append(a.as_list())
        else:
            raise TypeError(f"cannot evaluate on {a!r}")
    total = _zero()
    for idx, f in T.coeffs.items():
        d = _det_pairing(coeffs, idx)
        if not d.is_zero():
            total = total + f * d
    return total
