"""Exact coefficient ring.

A :class:`Scalar` is a quotient ``(sum_k p_k * e^{k t}) / q`` where every
``p_k`` and ``q`` is a multivariate polynomial over the rationals.  The
denominator never carries exponentials.  Values are kept in a reduced
canonical form, so structural equality is mathematical equality and
``is_zero`` is a literal test on the normal form.

Polynomials are sympy's sparse ``PolyElement`` objects in a graded
lexicographic ring whose generators are the sorted variable names.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from numbers import Rational
from typing import Iterable, Mapping

from sympy.polys.domains import QQ
from sympy.polys.orderings import grlex
from sympy.polys.rings import PolyElement, PolyRing

__all__ = [
    "LINE_VAR",
    "Scalar",
    "poly_ring",
    "scalar_add",
    "scalar_mul",
    "partial_derivative",
    "is_zero",
    "poly_to_str",
]

LINE_VAR = "t"


@lru_cache(maxsize=None)
def poly_ring(names: tuple[str, ...]) -> PolyRing:
    """The shared polynomial ring over ``QQ`` in the given (sorted) names."""
    if list(names) != sorted(set(names)):
        raise ValueError(f"ring generators must be sorted and distinct: {names}")
    return PolyRing(names, QQ, grlex)


def _ring_for(names: Iterable[str]) -> PolyRing:
    return poly_ring(tuple(sorted(set(names))))


def _names(ring: PolyRing) -> tuple[str, ...]:
    return tuple(str(s) for s in ring.symbols)


def _coerce_rational(value) -> object:
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, (int, Rational)):
        return QQ(value)
    raise TypeError(f"cannot coerce {value!r} to a rational")


class Scalar:
    """Reduced exact value ``(sum_k p_k e^{kt}) / q``.

    Instances are immutable.  Arithmetic with Python ints and
    ``fractions.Fraction`` is supported on either side.
    """

    __slots__ = ("ring", "bands", "den", "_hash")

    def __init__(self, ring: PolyRing, bands: Mapping[int, PolyElement], den: PolyElement):
        # Callers go through _make; this stores an already normal form.
        self.ring = ring
        self.bands = dict(bands)
        self.den = den
        self._hash = None

    # -- construction -----------------------------------------------------

    @staticmethod
    def _make(ring: PolyRing, bands: Mapping[int, PolyElement], den: PolyElement) -> "Scalar":
        bands = {k: p for k, p in bands.items() if p}
        if not den:
            raise ZeroDivisionError("zero denominator")
        if not bands:
            return Scalar(ring, {}, ring.one)
        if any(k for k in bands) and LINE_VAR not in _names(ring):
            new = _ring_for(_names(ring) + (LINE_VAR,))
            bands = {k: p.set_ring(new) for k, p in bands.items()}
            den = den.set_ring(new)
            ring = new
        if den.is_ground:
            c = den.LC
            if c != 1:
                bands = {k: p.quo_ground(c) for k, p in bands.items()}
            return Scalar(ring, bands, ring.one)
        g = den
        for p in bands.values():
            g = g.gcd(p)
            if g.is_ground:
                break
        if not g.is_ground:
            den = den.exquo(g)
            bands = {k: p.exquo(g) for k, p in bands.items()}
        c = den.LC
        if c != 1:
            den = den.quo_ground(c)
            bands = {k: p.quo_ground(c) for k, p in bands.items()}
        return Scalar(ring, bands, den)

    @classmethod
    def const(cls, value=0, variables: Iterable[str] = ()) -> "Scalar":
        ring = _ring_for(variables)
        return cls._make(ring, {0: ring(_coerce_rational(value))}, ring.one)

    @classmethod
    def zero(cls, variables: Iterable[str] = ()) -> "Scalar":
        return cls.const(0, variables)

    @classmethod
    def one(cls, variables: Iterable[str] = ()) -> "Scalar":
        return cls.const(1, variables)

    @classmethod
    def var(cls, name: str, variables: Iterable[str] = ()) -> "Scalar":
        ring = _ring_for(tuple(variables) + (name,))
        return cls._make(ring, {0: ring.gens[_names(ring).index(name)]}, ring.one)

    @classmethod
    def exp(cls, k: int, variables: Iterable[str] = ()) -> "Scalar":
        """``e^{k t}``."""
        ring = _ring_for(tuple(variables) + (LINE_VAR,))
        return cls._make(ring, {int(k): ring.one}, ring.one)

    @classmethod
    def from_poly(cls, p: PolyElement, k: int = 0) -> "Scalar":
        return cls._make(p.ring, {k: p}, p.ring.one)

    # -- introspection ----------------------------------------------------

    @property
    def variables(self) -> tuple[str, ...]:
        return _names(self.ring)

    def is_zero(self) -> bool:
        return not self.bands

    def is_exp_free(self) -> bool:
        return all(k == 0 for k in self.bands)

    def is_constant(self) -> bool:
        return self.is_exp_free() and self.den == 1 and all(p.is_ground for p in self.bands.values())

    def free_variables(self) -> set[str]:
        """Variables that actually occur (``t`` counts when an exp band is present)."""
        names = self.variables
        used = set()
        for k, p in self.bands.items():
            if k:
                used.add(LINE_VAR)
            for monom in p.itermonoms():
                used.update(names[i] for i, e in enumerate(monom) if e)
        for monom in self.den.itermonoms():
            used.update(names[i] for i, e in enumerate(monom) if e)
        return used

    def lift(self, variables: Iterable[str]) -> "Scalar":
        """The same value viewed in a ring over a superset of variables."""
        ring = _ring_for(tuple(variables) + self.variables)
        if ring is self.ring:
            return self
        return Scalar(ring, {k: p.set_ring(ring) for k, p in self.bands.items()}, self.den.set_ring(ring))

    def as_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"{self} is not a rational constant")
        if not self.bands:
            return Fraction(0)
        c = self.bands[0].LC
        return Fraction(int(c.numerator), int(c.denominator))

    # -- arithmetic -------------------------------------------------------

    def _coerce(self, other) -> "Scalar | None":
        if isinstance(other, Scalar):
            return other
        try:
            return Scalar.const(other, self.variables)
        except TypeError:
            return None

    @staticmethod
    def _unify(a: "Scalar", b: "Scalar") -> tuple["Scalar", "Scalar"]:
        if a.ring is b.ring:
            return a, b
        names = set(a.variables) | set(b.variables)
        return a.lift(names), b.lift(names)

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not other.bands:
            return self
        if not self.bands:
            return other
        a, b = self._unify(self, other)
        if a.den == b.den:
            bands = dict(a.bands)
            for k, p in b.bands.items():
                bands[k] = bands[k] + p if k in bands else p
            if a.den == 1:
                bands = {k: p for k, p in bands.items() if p}
                return Scalar(a.ring, bands, a.den)
            return Scalar._make(a.ring, bands, a.den)
        bands = {k: p * b.den for k, p in a.bands.items()}
        for k, p in b.bands.items():
            q = p * a.den
            bands[k] = bands[k] + q if k in bands else q
        return Scalar._make(a.ring, bands, a.den * b.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self.ring, {k: -p for k, p in self.bands.items()}, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if not self.bands or not other.bands:
            return Scalar.zero(set(self.variables) | set(other.variables))
        a, b = self._unify(self, other)
        bands: dict[int, PolyElement] = {}
        for j, p in a.bands.items():
            for k, q in b.bands.items():
                r = p * q
                bands[j + k] = bands[j + k] + r if j + k in bands else r
        if a.den == 1 and b.den == 1:
            bands = {k: p for k, p in bands.items() if p}
            return Scalar(a.ring, bands, a.den)
        return Scalar._make(a.ring, bands, a.den * b.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        """Multiplicative inverse; the numerator must sit in a single band."""
        if not self.bands:
            raise ZeroDivisionError("inverse of zero")
        if len(self.bands) != 1:
            raise ValueError(f"cannot invert multi-band value {self}; denominators must be exp-free")
        (k, p), = self.bands.items()
        return Scalar._make(self.ring, {-k: self.den}, p)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self._unify(self, other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Scalar.one(self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def diff(self, name: str) -> "Scalar":
        """Partial derivative; ``t`` acts on exp bands by ``d/dt e^{kt} = k e^{kt}``."""
        if name not in self.variables:
            return Scalar.zero(self.variables)
        ring = self.ring
        gen = ring.gens[_names(ring).index(name)]
        on_line = name == LINE_VAR

        def dnum(bands):
            out = {}
            for k, p in bands.items():
                d = p.diff(gen)
                if on_line and k:
                    d = d + p * k
                if d:
                    out[k] = d
            return out

        num = dnum(self.bands)
        if self.den == 1:
            return Scalar(ring, num, ring.one)
        dq = self.den.diff(gen)
        bands = {k: p * self.den for k, p in num.items()}
        if dq:
            for k, p in self.bands.items():
                r = -p * dq
                bands[k] = bands[k] + r if k in bands else r
        return Scalar._make(ring, bands, self.den * self.den)

    # -- comparison / hashing --------------------------------------------

    def _key(self):
        names = self.variables
        bands = tuple(sorted((k, tuple(sorted(p.items()))) for k, p in self.bands.items()))
        return names, bands, tuple(sorted(self.den.items()))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            if not self.bands and not other.bands:
                return True
            a, b = self._unify(self, other)
            return a.bands == b.bands and a.den == b.den
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self == other

    def __hash__(self):
        if self._hash is None:
            # Hash must agree across rings, so drop unused variables first.
            self._hash = hash(self._restrict()._key())
        return self._hash

    def _restrict(self) -> "Scalar":
        used = self.free_variables()
        if LINE_VAR in self.variables and any(self.bands):
            used.add(LINE_VAR)
        ring = _ring_for(used)
        if ring is self.ring:
            return self
        return Scalar(ring, {k: p.set_ring(ring) for k, p in self.bands.items()}, self.den.set_ring(ring))

    def __bool__(self):
        return bool(self.bands)

    # -- rendering --------------------------------------------------------

    def __str__(self):
        return to_literal(self)

    def __repr__(self):
        return f"Scalar({to_literal(self)!r})"


def _rational_str(c) -> str:
    num, den = int(c.numerator), int(c.denominator)
    return str(num) if den == 1 else f"{num}/{den}"


def poly_to_str(p: PolyElement) -> str:
    """Render a polynomial in the literal grammar (``^`` for powers)."""
    if not p:
        return "0"
    names = _names(p.ring)
    parts = []
    for monom, coeff in p.terms():
        factors = []
        for name, e in zip(names, monom):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        neg = coeff < 0
        mag = -coeff if neg else coeff
        if factors:
            body = "*".join(factors)
            if mag != 1:
                body = f"{_rational_str(mag)}*{body}"
        else:
            body = _rational_str(mag)
        parts.append(("-" if neg else "+", body))
    sign, body = parts[0]
    out = ("-" if sign == "-" else "") + body
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def _wrap(s: str) -> str:
    return s if all(ch not in s for ch in " +") and not s.startswith("-") else f"({s})"


def to_literal(a: Scalar) -> str:
    if not a.bands:
        return "0"
    pieces = []
    for k in sorted(a.bands):
        ps = poly_to_str(a.bands[k])
        if k == 0:
            pieces.append(ps)
        else:
            if ps in ("1", "-1"):
                pieces.append(f"{ps[:-1]}exp({k}*t)")
            else:
                pieces.append(f"{_wrap(ps)}*exp({k}*t)")
    num = pieces[0]
    for piece in pieces[1:]:
        num += f" - {piece[1:]}" if piece.startswith("-exp") else f" + {piece}"
    if a.den == 1:
        return num
    den = poly_to_str(a.den)
    if not den.isidentifier():
        den = f"({den})"
    return f"{_wrap(num) if len(pieces) > 1 or ' ' in num else num}/{den}"


def scalar_add(a: Scalar, b: Scalar) -> Scalar:
    return a + b


def scalar_mul(a: Scalar, b: Scalar) -> Scalar:
    return a * b


def partial_derivative(a: Scalar, v: str) -> Scalar:
    return a.diff(v)


def is_zero(a: Scalar) -> bool:
    return a.is_zero()
