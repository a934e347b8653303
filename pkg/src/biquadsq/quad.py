"""Quadratic fields Q(sqrt d) and valuations at odd prime ideals."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import legendre, rational_sqrt, sqrt_mod_p, to_fraction, v_p
from .errors import ZeroElement


@dataclass(frozen=True)
class QuadElem:
    """The element x + y*sqrt(d) of Q(sqrt d), exact rational coordinates."""

    d: int
    x: Fraction
    y: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "x", to_fraction(self.x))
        object.__setattr__(self, "y", to_fraction(self.y))

    def _coerce(self, other) -> "QuadElem":
        if isinstance(other, QuadElem):
            if other.d != self.d:
                raise ValueError(f"mixing Q(sqrt {self.d}) and Q(sqrt {other.d})")
            return other
        return QuadElem(self.d, other)

    def __add__(self, other):
        o = self._coerce(other)
        return QuadElem(self.d, self.x + o.x, self.y + o.y)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(self.d, -self.x, -self.y)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        return QuadElem(self.d, self.x * o.x + self.d * self.y * o.y, self.x * o.y + self.y * o.x)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in quadratic field")
        c = self * o.conj()
        return QuadElem(self.d, c.x / n, c.y / n)

    def __bool__(self):
        return bool(self.x or self.y)

    def conj(self) -> "QuadElem":
        return QuadElem(self.d, self.x, -self.y)

    def norm(self) -> Fraction:
        return self.x * self.x - self.d * self.y * self.y

    def trace(self) -> Fraction:
        return 2 * self.x

    def is_integral_coords(self) -> bool:
        return self.x.denominator == 1 and self.y.denominator == 1

    def __repr__(self):
        return f"QuadElem({self.x} + {self.y}*sqrt({self.d}))"


def conj(r: QuadElem) -> QuadElem:
    return r.conj()


def norm(r: QuadElem) -> Fraction:
    return r.norm()


@dataclass(frozen=True)
class SplittingType:
    kind: str  # "split" | "inert" | "ramified"
    root: int | None = None  # canonical root of d mod p when split


def splitting_type(d: int, p: int) -> SplittingType:
    ls = legendre(d, p)
    if ls == 0:
        return SplittingType("ramified")
    if ls == -1:
        return SplittingType("inert")
    return SplittingType("split", sqrt_mod_p(d, p))


def _integral_scale(r: QuadElem) -> tuple[int, int, int]:
    """Clear denominators: returns (L, X, Y) with L*r = X + Y*sqrt(d)."""
    if not r:
        raise ZeroElement("valuation of zero")
    L = math.lcm(r.x.denominator, r.y.denominator)
    return L, int(r.x * L), int(r.y * L)


def _v(n: int, p: int) -> int:
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def val_split(r: QuadElem, p: int, A: int) -> int:
    """Valuation of ``r`` at the prime ideal (p, sqrt(d) - A) over a split p.

    Strip the p-content p**f of the coordinates; the reduced element lies in
    at most one of the two primes above p, and it lies in (p, sqrt d - A)
    exactly when p divides x + y*A. In that case it carries all of
    v_p(norm).
    """
    if (A * A - r.d) % p:
        raise ValueError(f"{A} is not a square root of {r.d} mod {p}")
    L, x, y = _integral_scale(r)
    f = min(_v(x, p) if x else math.inf, _v(y, p) if y else math.inf)
    x //= p**f
    y //= p**f
    out = f
    if (x + y * A) % p == 0:
        out += _v(x * x - r.d * y * y, p)
    return out - _v(L, p)


def val_ramified(r: QuadElem, p: int) -> int:
    """Valuation at the unique prime above p when p | d, with v(p) = 2."""
    if r.d % p:
        raise ValueError(f"{p} does not divide {r.d}")
    if not r:
        raise ZeroElement("valuation of zero")
    return v_p(r.norm(), p)


def val_ramified_closed_form(r: QuadElem, p: int) -> int:
    """The closed form v_p(x^2 - d y^2) - f with p**f the content of (x, y).

    Kept only to document where it disagrees with ``val_ramified``; the
    decision code never calls it.
    """
    L, x, y = _integral_scale(r)
    if L != 1:
        raise ValueError("closed form is stated for integral coordinates")
    f = min(_v(x, p) if x else math.inf, _v(y, p) if y else math.inf)
    return _v(x * x - r.d * y * y, p) - f


def quad_sqrt(r: QuadElem) -> QuadElem | None:
    """Exact square root in Q(sqrt d), or None when r is not a square."""
    d = r.d
    if not r:
        return QuadElem(d, 0)
    if r.y == 0:
        s = rational_sqrt(r.x)
        if s is not None:
            return QuadElem(d, s)
        t = rational_sqrt(r.x / d)
        return QuadElem(d, 0, t) if t is not None else None
    s = rational_sqrt(r.norm())
    if s is None:
        return None
    for m2 in ((r.x + s) / 2, (r.x - s) / 2):
        m = rational_sqrt(m2)
        if m:
            cand = QuadElem(d, m, r.y / (2 * m))
            if cand * cand == r:
                return cand
    return None
