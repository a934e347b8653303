"""Biquadratic fields Q(sqrt a, sqrt b): elements, Galois action, norms,
signs under real embeddings and integrality.

Basis is (1, sqrt a, sqrt b, sqrt c) with c = ab/g^2, g = gcd(a, b), and the
square root of c fixed by sqrt(a)*sqrt(b) = g*sqrt(c). Products of basis
vectors are then

    sqrt a * sqrt c = (a/g) sqrt b,   sqrt b * sqrt c = (b/g) sqrt a.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .arith import Rational, is_square_rational, squarefree_decompose, to_fraction
from .errors import DegenerateField, NotARealField, ZeroElement
from .quad import QuadElem, quad_sqrt


@dataclass(frozen=True)
class BiquadField:
    a: int
    b: int
    c: int
    g: int

    @property
    def radicands(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def radicand(self, i: int) -> int:
        return self.radicands[i - 1]

    @property
    def is_real(self) -> bool:
        return self.a > 0 and self.b > 0

    def basis_product(self, i: int, j: int) -> tuple[int, int]:
        """sqrt(d_i) * sqrt(d_j) as ``(coef, k)``, meaning coef * basis[k]."""
        if i == j:
            return self.radicand(i), 0
        i, j = sorted((i, j))
        if (i, j) == (1, 2):
            return self.g, 3
        if (i, j) == (1, 3):
            return self.a // self.g, 2
        return self.b // self.g, 1

    def elem(self, *coords: Rational) -> "BiquadElem":
        if len(coords) == 1 and not isinstance(coords[0], (int, Fraction, str)):
            coords = tuple(coords[0])
        coords = tuple(coords) + (0,) * (4 - len(coords))
        return BiquadElem(self, coords)

    def one(self) -> "BiquadElem":
        return self.elem(1)

    def sqrt_radicand(self, i: int) -> "BiquadElem":
        v = [0, 0, 0, 0]
        v[i] = 1
        return self.elem(*v)

    def __str__(self):
        return f"Q(sqrt({self.a}), sqrt({self.b}))"


def make_field(a: int, b: int) -> BiquadField:
    """Build Q(sqrt a, sqrt b) from raw integers, reducing to squarefree cores."""
    if a == 0 or b == 0:
        raise DegenerateField("radicands must be nonzero")
    a = squarefree_decompose(a)[1]
    b = squarefree_decompose(b)[1]
    if a == 1 or b == 1 or is_square_rational(a * b):
        raise DegenerateField(f"Q(sqrt {a}, sqrt {b}) is not biquadratic")
    g = math.gcd(a, b)
    return BiquadField(a, b, a * b // (g * g), g)


@dataclass(frozen=True)
class BiquadElem:
    """s0 + s1*sqrt(a) + s2*sqrt(b) + s3*sqrt(c) over a fixed field."""

    field: BiquadField
    s: tuple[Fraction, Fraction, Fraction, Fraction]

    def __post_init__(self):
        if len(self.s) != 4:
            raise ValueError("need four coordinates")
        object.__setattr__(self, "s", tuple(to_fraction(x) for x in self.s))

    @property
    def s0(self) -> Fraction:
        return self.s[0]

    @property
    def s1(self) -> Fraction:
        return self.s[1]

    @property
    def s2(self) -> Fraction:
        return self.s[2]

    @property
    def s3(self) -> Fraction:
        return self.s[3]

    def _coerce(self, other) -> "BiquadElem":
        if isinstance(other, BiquadElem):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other
        return BiquadElem(self.field, (to_fraction(other), 0, 0, 0))

    def __add__(self, other):
        o = self._coerce(other)
        return BiquadElem(self.field, tuple(x + y for x, y in zip(self.s, o.s)))

    __radd__ = __add__

    def __neg__(self):
        return BiquadElem(self.field, tuple(-x for x in self.s))

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, BiquadElem):
            k = to_fraction(other)
            return BiquadElem(self.field, tuple(k * x for x in self.s))
        o = self._coerce(other)
        F = self.field
        a, b, c, g = F.a, F.b, F.c, F.g
        s0, s1, s2, s3 = self.s
        t0, t1, t2, t3 = o.s
        return BiquadElem(
            F,
            (
                s0 * t0 + a * s1 * t1 + b * s2 * t2 + c * s3 * t3,
                s0 * t1 + s1 * t0 + (b // g) * (s2 * t3 + s3 * t2),
                s0 * t2 + s2 * t0 + (a // g) * (s1 * t3 + s3 * t1),
                s0 * t3 + s3 * t0 + g * (s1 * t2 + s2 * t1),
            ),
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, BiquadElem):
            return self * other.inverse()
        k = to_fraction(other)
        return BiquadElem(self.field, tuple(x / k for x in self.s))

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self.field.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return any(self.s)

    def inverse(self) -> "BiquadElem":
        n = norm_total(self)
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return sigma(self, 1) * sigma(self, 2) * sigma(self, 3) / n

    def is_rational(self) -> bool:
        return not (self.s1 or self.s2 or self.s3)

    def has_integer_coords(self) -> bool:
        return all(x.denominator == 1 for x in self.s)

    def is_primitive(self) -> bool:
        return self.has_integer_coords() and math.gcd(*(int(x) for x in self.s)) == 1

    def int_coords(self) -> tuple[int, int, int, int]:
        if not self.has_integer_coords():
            raise ValueError("element has non-integer coordinates")
        return tuple(int(x) for x in self.s)

    def __repr__(self):
        F = self.field
        return f"BiquadElem({F.a},{F.b}: {', '.join(str(x) for x in self.s)})"


_SIGMA_SIGNS = {
    1: (1, 1, -1, -1),
    2: (1, -1, 1, -1),
    3: (1, -1, -1, 1),
}


def sigma(S: BiquadElem, i: int) -> BiquadElem:
    """The Galois automorphism fixing Q(sqrt d_i) pointwise (i = 1, 2, 3)."""
    if i == 0:
        return S
    return BiquadElem(S.field, tuple(e * x for e, x in zip(_SIGMA_SIGNS[i], S.s)))


def conjugates(S: BiquadElem) -> list[BiquadElem]:
    return [sigma(S, i) for i in range(4)]


def project(S: BiquadElem, i: int) -> QuadElem:
    """View an element of the subfield Q(sqrt d_i) as a QuadElem."""
    for j in (1, 2, 3):
        if j != i and S.s[j]:
            raise AssertionError(f"{S!r} does not lie in Q(sqrt d_{i})")
    return QuadElem(S.field.radicand(i), S.s0, S.s[i])


def lift(r: QuadElem, F: BiquadField) -> BiquadElem:
    i = F.radicands.index(r.d) + 1
    v = [r.x, 0, 0, 0]
    v[i] = r.y
    return F.elem(*v)


def subfield_product(S: BiquadElem, i: int) -> QuadElem:
    """T_i = S * sigma_i(S), which lies in Q(sqrt d_i)."""
    return project(S * sigma(S, i), i)


def norm_total(S: BiquadElem) -> Fraction:
    n = S * sigma(S, 1) * sigma(S, 2) * sigma(S, 3)
    if not n.is_rational():
        raise AssertionError("norm is not rational; arithmetic bug")
    return n.s0


def _sign(x: Fraction) -> int:
    return (x > 0) - (x < 0)


def sign_quad(x: Fraction, y: Fraction, d: int) -> int:
    """Sign of the real number x + y*sqrt(d), d > 0 not a square."""
    sx, sy = _sign(x), _sign(y)
    if sy == 0 or sx == sy:
        return sx
    if sx == 0:
        return sy
    return sx if x * x > d * y * y else sy


def _sign_in_subfield(r: QuadElem, eps: int) -> int:
    return sign_quad(r.x, eps * r.y, r.d)


def _tower(S: BiquadElem) -> tuple[QuadElem, QuadElem]:
    """Write S = P + Q*sqrt(b) with P, Q in Q(sqrt a)."""
    F = S.field
    P = QuadElem(F.a, S.s0, S.s1)
    Q = QuadElem(F.a, S.s2, S.s3 / F.g)
    return P, Q


def embedding_signs(S: BiquadElem) -> list[int]:
    """Signs of S under the four real embeddings, ordered by
    (sqrt a, sqrt b) -> (+,+), (+,-), (-,+), (-,-)."""
    F = S.field
    if not F.is_real:
        raise NotARealField(str(F))
    P, Q = _tower(S)
    R = P * P - F.b * (Q * Q)
    out = []
    for ea in (1, -1):
        sp, sq = _sign_in_subfield(P, ea), _sign_in_subfield(Q, ea)
        for eb in (1, -1):
            sq_e = sq * eb
            if sq_e == 0 or sp == sq_e:
                out.append(sp)
            elif sp == 0:
                out.append(sq_e)
            else:
                out.append(sp if _sign_in_subfield(R, ea) > 0 else sq_e)
    return out


def is_totally_positive(S: BiquadElem) -> bool:
    """Exact test: P > 0 and P^2 - b Q^2 > 0 under both embeddings of Q(sqrt a)."""
    F = S.field
    if not F.is_real:
        raise NotARealField(str(F))
    P, Q = _tower(S)
    R = P * P - F.b * (Q * Q)
    return all(
        _sign_in_subfield(P, e) > 0 and _sign_in_subfield(R, e) > 0 for e in (1, -1)
    )


def char_poly(S: BiquadElem) -> list[Fraction]:
    """Coefficients [1, c3, c2, c1, c0] of prod over conjugates of (X - conj)."""
    t = S + sigma(S, 1)
    n = S * sigma(S, 1)
    t2, n2 = sigma(t, 2), sigma(n, 2)
    coeffs = [t + t2, n + n2 + t * t2, t * n2 + t2 * n, n * n2]
    out = [Fraction(1)]
    for sign, e in zip((-1, 1, -1, 1), coeffs):
        if not e.is_rational():
            raise AssertionError("characteristic polynomial is not rational")
        out.append(sign * e.s0)
    return out


def is_integral(S: BiquadElem) -> bool:
    return all(c.denominator == 1 for c in char_poly(S))


def content_split(S: BiquadElem) -> tuple[Fraction, BiquadElem]:
    """S = q * S0 with q > 0 rational and S0 primitive (sign stays in S0)."""
    if not S:
        raise ZeroElement("content of zero")
    L = math.lcm(*(x.denominator for x in S.s))
    ints = [int(x * L) for x in S.s]
    G = math.gcd(*ints)
    q = Fraction(G, L)
    return q, BiquadElem(S.field, tuple(Fraction(x, G) for x in ints))


def permute_roles(S: BiquadElem, first: int, second: int) -> BiquadElem:
    """Re-express S over the same field presented as Q(sqrt d_first, sqrt d_second).

    The third square root of the new presentation is pinned by the usual
    identity, which may flip its sign relative to the old basis.
    """
    F = S.field
    third = ({1, 2, 3} - {first, second}).pop()
    G = make_field(F.radicand(first), F.radicand(second))
    coef, k = F.basis_product(first, second)
    if k != third or abs(coef) != G.g:
        raise AssertionError("inconsistent basis relabeling")
    sign = coef // G.g
    return BiquadElem(G, (S.s0, S.s[first], S.s[second], sign * S.s[third]))


def sqrt_elem(z: BiquadElem) -> BiquadElem | None:
    """Exact square root of z in F, or None when z is not a square.

    Works down the tower F = Q(sqrt a)(sqrt b): with z = P + Q sqrt b and
    y = u + v sqrt b, u^2 is a root of X^2 - P X + b Q^2 / 4, so u^2 =
    (P +- sqrt(P^2 - b Q^2)) / 2 and v = Q / 2u.
    """
    F = z.field
    if not z:
        return z
    P, Q = _tower(z)

    def build(u: QuadElem, v: QuadElem) -> BiquadElem:
        return F.elem(u.x, u.y, v.x, F.g * v.y)

    candidates: list[BiquadElem] = []
    if not Q:
        r = quad_sqrt(P)
        if r is not None:
            candidates.append(build(r, QuadElem(F.a, 0)))
        t = quad_sqrt(P / F.b)
        if t is not None:
            candidates.append(build(QuadElem(F.a, 0), t))
    else:
        s = quad_sqrt(P * P - F.b * (Q * Q))
        if s is None:
            return None
        for u2 in ((P + s) * Fraction(1, 2), (P - s) * Fraction(1, 2)):
            u = quad_sqrt(u2)
            if u:
                candidates.append(build(u, Q / (2 * u)))
    for y in candidates:
        if y * y == z:
            return y
    return None


def parse_coords(text: str | Iterable) -> tuple[Fraction, ...]:
    if isinstance(text, str):
        parts = [p for p in text.replace(" ", "").split(",")]
    else:
        parts = list(text)
    if len(parts) != 4:
        raise ValueError(f"expected four coordinates, got {len(parts)}")
    return tuple(to_fraction(p) for p in parts)
