"""Dyadic places.

Case split on which radicands are 1 mod 8:

* none: one place above 2, settled by reciprocity once every other place passes;
* one radicand d = 1 mod 8 and the others not 1 mod 4: two places, each a
  ramified quadratic extension of Q_2;
* d = 1 mod 8 and the others 5 mod 8: two places, each Q_2(sqrt 5);
* all three 1 mod 8: four places, each Q_2.

In the split cases an element is pushed into the completion by substituting
2-adic approximations of the square roots, then the unit part is tested
modulo 4.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import hensel_sqrt_2adic, hilbert_minus_one, squarefree_decompose
from .biquad import BiquadElem, BiquadField, is_integral, norm_total, subfield_product
from .certificate import PlaceCertificate
from .errors import (
    InconsistentEmbedding,
    NotApplicable,
    NotAUnit,
    PrecisionExhausted,
    UnexpectedValuation,
)

ONE_PLACE = "one_place"
SPLIT_RAMIFIED = "split_ramified"
SPLIT_INERT = "split_inert"
COMPLETELY_SPLIT = "completely_split"

DEFAULT_PRECISION = 8
CROSSCHECK_PRECISION = 16
MAX_PRECISION = 4096

# multiplier m with e(N) = m*sqrt(5) for N mod 32 in the 5 mod 8 classes
SQRT5_TABLE = {5: 1, 13: 1 + 4 + 8, 21: 1 + 8, 29: 1 + 4}

# h mod 4*O, O = Z[w], w = (1 + sqrt 5)/2, written as (x, y) for x + y*w:
# 1, 3, (3 + sqrt5)/2, (3 - sqrt5)/2, (-3 + sqrt5)/2, (-3 - sqrt5)/2
Q2SQRT5_SUM_CLASSES = frozenset({(1, 0), (3, 0), (1, 1), (2, 3), (2, 1), (3, 3)})


def _v2(n: int) -> int:
    return (n & -n).bit_length() - 1


def _root_1mod4(n: int, k: int) -> int:
    """The 2-adic square root of n that is 1 mod 4, modulo 2**(k-1).

    Unlike the canonical representative this does not change sign with k,
    so places labelled by it keep their labels when precision grows.
    """
    E = hensel_sqrt_2adic(n, k)
    return E if E % 4 == 1 else (1 << k) - E


@dataclass(frozen=True)
class Zsqrt5Residue:
    """x + y*w in Z_2[w] modulo 2**k, w = (1 + sqrt 5)/2.

    In the u + v*sqrt(5) picture, u = x + y/2 and v = y/2, so half-integral
    u, v are allowed as long as u - v is an integer.
    """

    x: int
    y: int
    k: int

    def __post_init__(self):
        m = 1 << self.k
        object.__setattr__(self, "x", self.x % m)
        object.__setattr__(self, "y", self.y % m)

    @classmethod
    def from_uv(cls, u, v, k: int) -> "Zsqrt5Residue":
        u, v = Fraction(u), Fraction(v)
        x, y = u - v, 2 * v
        if x.denominator != 1 or y.denominator != 1:
            raise ValueError(f"{u} + {v}*sqrt5 is not in Z[(1+sqrt5)/2]")
        return cls(int(x), int(y), k)

    @property
    def u(self) -> Fraction:
        return Fraction((2 * self.x + self.y) % (1 << self.k), 2)

    @property
    def v(self) -> Fraction:
        return Fraction(self.y, 2)

    def _lift(self, other) -> "Zsqrt5Residue":
        if isinstance(other, Zsqrt5Residue):
            return other
        return Zsqrt5Residue(int(other), 0, self.k)

    def __add__(self, other):
        o = self._lift(other)
        return Zsqrt5Residue(self.x + o.x, self.y + o.y, min(self.k, o.k))

    __radd__ = __add__

    def __neg__(self):
        return Zsqrt5Residue(-self.x, -self.y, self.k)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        x1, y1, x2, y2 = self.x, self.y, o.x, o.y
        return Zsqrt5Residue(x1 * x2 + y1 * y2, x1 * y2 + x2 * y1 + y1 * y2, min(self.k, o.k))

    __rmul__ = __mul__

    def norm(self) -> int:
        """Norm to Z_2, reduced mod 2**k."""
        return (self.x * self.x + self.x * self.y - self.y * self.y) % (1 << self.k)

    def valuation(self) -> int:
        """2-adic valuation, capped at k when the residue is zero."""
        vx = _v2(self.x) if self.x else self.k
        vy = _v2(self.y) if self.y else self.k
        return min(vx, vy, self.k)

    def shift(self, f: int) -> "Zsqrt5Residue":
        """Divide by 2**f (caller guarantees divisibility); precision drops by f."""
        return Zsqrt5Residue(self.x >> f, self.y >> f, self.k - f)

    def mod4(self) -> tuple[int, int]:
        return (self.x % 4, self.y % 4)

    def is_rational(self) -> bool:
        return self.y == 0

    def __str__(self):
        return f"{self.u} + {self.v}*sqrt5 (mod 2^{self.k})"


@dataclass(frozen=True)
class DyadicCase:
    kind: str
    roles: tuple[int, int, int] | None = None  # (distinguished, other, other)

    def radicands(self, F: BiquadField) -> tuple[int, int, int] | None:
        if self.roles is None:
            return None
        return tuple(F.radicand(i) for i in self.roles)


def dyadic_case(F: BiquadField) -> DyadicCase:
    ones = [i for i in (1, 2, 3) if F.radicand(i) % 8 == 1]
    if not ones:
        return DyadicCase(ONE_PLACE)
    dist = 3 if 3 in ones else ones[0]
    o1, o2 = [i for i in (1, 2, 3) if i != dist]
    b, c = F.radicand(o1), F.radicand(o2)
    if (b - c) % 8:
        raise AssertionError(f"{b} and {c} should agree mod 8")
    if b % 4 != 1:
        kind = SPLIT_RAMIFIED
    elif b % 8 == 5:
        kind = SPLIT_INERT
    else:
        kind = COMPLETELY_SPLIT
    return DyadicCase(kind, (dist, o1, o2))


def e_approx(N: int, k: int = DEFAULT_PRECISION):
    """2-adic approximation of sqrt(N) for odd N = 1 (mod 4).

    Squarefree part W = 1 mod 8: the canonical root E of W mod 2**k (an int).
    W = 5 mod 8: m*sqrt(5) as a Zsqrt5Residue, with m the tabulated
    multiplier refined so that (m sqrt5)^2 = W mod 2**k. A square part s^2
    multiplies the root by s.
    """
    if N % 4 != 1:
        raise NotApplicable(f"{N} is not 1 mod 4")
    s, W = squarefree_decompose(N)
    if W % 8 == 1:
        E = hensel_sqrt_2adic(W, k)
        if k > DEFAULT_PRECISION and (E - hensel_sqrt_2adic(W, DEFAULT_PRECISION)) % 64:
            E = (1 << k) - E  # keep the sign of the tabulated root
        return s * E
    if k < 5:
        raise ValueError("sqrt5 rows need precision >= 5")
    half = 1 << (k - 1)
    m = SQRT5_TABLE[W % 32]
    E = hensel_sqrt_2adic(W * pow(5, -1, 1 << k) % (1 << k), k)
    if (E - m) % 16:
        E = (half - E) % half
    return Zsqrt5Residue.from_uv(0, s * E, k)


def _as_residue(x, k: int) -> Zsqrt5Residue:
    return x if isinstance(x, Zsqrt5Residue) else Zsqrt5Residue(int(x), 0, k)


def find_A(F: BiquadField, roles: tuple[int, int, int], eb, ec, modulus: int = 16) -> int:
    """Image of the distinguished square root compatible with eb, ec.

    sqrt(d_o1)*sqrt(d_o2) = kappa*sqrt(d_dist) in F, with kappa = +-gcd, so
    A = eb*ec/kappa. The sign of kappa matters: dropping it produces a map
    that is not a ring homomorphism.
    """
    dist, o1, o2 = roles
    kappa, k = F.basis_product(o1, o2)
    if k != dist:
        raise AssertionError("roles do not match the field")
    prod = _as_residue(eb, 64) * _as_residue(ec, 64)
    if prod.y % modulus:
        raise InconsistentEmbedding("product of the two images is not in Z_2")
    A = prod.x * pow(kappa, -1, modulus) % modulus
    check = min(modulus, 16)
    if A % 2 == 0 or (A * A - F.radicand(dist)) % check:
        raise InconsistentEmbedding(f"A = {A} is not a root of {F.radicand(dist)} mod {check}")
    return A


def embedding_images(F: BiquadField, case: DyadicCase, k: int, signs=(1, 1)) -> dict[int, Zsqrt5Residue]:
    """Images of sqrt a, sqrt b, sqrt c (keys 1..3) under one 2-adic embedding,
    valid modulo 2**(k-1)."""
    dist, o1, o2 = case.roles
    eb = _as_residue(e_approx(F.radicand(o1), k), k)
    ec = _as_residue(e_approx(F.radicand(o2), k), k)
    A = find_A(F, case.roles, eb, ec, modulus=1 << (k - 1))
    sb, sc = signs
    kk = k - 1
    return {
        o1: Zsqrt5Residue(sb * eb.x, sb * eb.y, kk),
        o2: Zsqrt5Residue(sc * ec.x, sc * ec.y, kk),
        dist: Zsqrt5Residue(sb * sc * A, 0, kk),
    }


def place_signs(case: DyadicCase) -> list[tuple[int, int]]:
    """One sign choice per dyadic place (conjugate embeddings dropped)."""
    if case.kind == COMPLETELY_SPLIT:
        return [(1, 1), (1, -1), (-1, 1), (-1, -1)]
    if case.kind == SPLIT_INERT:
        return [(1, 1), (1, -1)]
    raise ValueError(f"no substitution for case {case.kind}")


@dataclass(frozen=True)
class DyadicResidue:
    f: int
    unit: Zsqrt5Residue  # unit part, precision already reduced by f
    value: Zsqrt5Residue  # the substituted value before dividing out 2**f

    @property
    def residue(self):
        return self.unit.x if self.unit.is_rational() else self.unit


def substitute_residue(
    S: BiquadElem,
    case: DyadicCase,
    k: int = DEFAULT_PRECISION,
    signs=(1, 1),
    max_f: int | None = None,
) -> DyadicResidue:
    """Evaluate s0 + s1 A + s2 e(b) + s3 e(c) and split off 2**f."""
    if case.kind not in (SPLIT_INERT, COMPLETELY_SPLIT):
        raise ValueError(f"no substitution for case {case.kind}")
    imgs = embedding_images(S.field, case, k, signs)
    kk = k - 1
    s = S.int_coords()
    n = Zsqrt5Residue(s[0], 0, kk)
    for i in (1, 2, 3):
        n = n + imgs[i] * s[i]
    f = n.valuation()
    if f > kk - 2:
        raise PrecisionExhausted(f"valuation {f} leaves no room at precision {k}")
    if max_f is not None and f > max_f:
        raise UnexpectedValuation(f"2-adic valuation {f} exceeds {max_f}")
    return DyadicResidue(f, n.shift(f), n)


def substitute_auto(S: BiquadElem, case: DyadicCase, signs=(1, 1), k: int = DEFAULT_PRECISION) -> DyadicResidue:
    while True:
        try:
            return substitute_residue(S, case, k, signs)
        except PrecisionExhausted:
            if k >= MAX_PRECISION:
                raise
            k += 8


def unit_is_sum_q2(u: int) -> bool:
    if u % 2 == 0:
        raise NotAUnit(f"{u} is even")
    return u % 4 == 1


def unit_is_sum_q2sqrt5(h: Zsqrt5Residue) -> bool:
    if h.k < 2:
        raise PrecisionExhausted("need the residue mod 4")
    if h.norm() % 2 == 0:
        raise NotAUnit(f"{h} is not a unit")
    return h.mod4() in Q2SQRT5_SUM_CLASSES


def ramified_dyadic_test(S: BiquadElem, V: int = 1) -> tuple[bool, int | None]:
    """Integrality form: V*S = 2^f (2 S' + 1) with S' integral.

    Takes the largest f in -2..4 with V*S/2^f integral. Returns (passed, f).
    """
    W = S * V
    for f in range(4, -3, -1):
        Wf = W / Fraction(2) ** f
        if is_integral(Wf):
            return is_integral((Wf - 1) / 2), f
    return False, None


def ramified_place_values(S: BiquadElem, case: DyadicCase, k: int = CROSSCHECK_PRECISION) -> list[tuple[int, int]]:
    """(f, unit mod 4) of the local norm at each of the two ramified places.

    The local norm down to Q_2 is the image of T = S sigma(S) in the
    distinguished subfield under sqrt(d) -> +-alpha in Z_2.
    """
    dist = case.roles[0]
    T = subfield_product(S, dist)
    L = T.x.denominator * T.y.denominator
    x, y = int(T.x * L * L), int(T.y * L * L)  # scale by a square
    while True:
        alpha = _root_1mod4(T.d, k)
        mod = 1 << (k - 1)
        out = []
        for e in (1, -1):
            n = (x + e * y * alpha) % mod
            f = _v2(n) if n else k
            if f > k - 4:
                break
            out.append((f, (n >> f) % 4))
        else:
            return out
        if k >= MAX_PRECISION:
            raise PrecisionExhausted("ramified dyadic evaluation")
        k += 8


def dyadic_crosscheck(S: BiquadElem, k: int = CROSSCHECK_PRECISION, V: int = 1) -> list[int]:
    """(-1, V*S) at every dyadic place, evaluated as (-1, local norm) over Q_2."""
    if k < 16:
        raise ValueError("cross-check precision must be at least 16")
    F = S.field
    case = dyadic_case(F)
    W = S * V
    if case.kind == ONE_PLACE:
        return [hilbert_minus_one(norm_total(W), 2)]
    if case.kind == SPLIT_RAMIFIED:
        return [1 if u == 1 else -1 for _, u in ramified_place_values(W, case, k)]
    out = []
    for signs in place_signs(case):
        kk = k
        while True:
            imgs = _crosscheck_images(F, case, kk, signs)
            s = W.int_coords()
            n = Zsqrt5Residue(s[0], 0, kk - 1)
            for i in (1, 2, 3):
                n = n + imgs[i] * s[i]
            if case.kind == SPLIT_INERT:
                nn = n.norm()
            else:
                nn = n.x
            f = _v2(nn) if nn else kk
            if f <= kk - 4:
                out.append(1 if (nn >> f) % 4 == 1 else -1)
                break
            if kk >= MAX_PRECISION:
                raise PrecisionExhausted("dyadic cross-check")
            kk += 8
    return out


def _crosscheck_images(F: BiquadField, case: DyadicCase, k: int, signs) -> dict[int, Zsqrt5Residue]:
    """Embedding images built from Hensel roots directly, not from e()."""
    dist, o1, o2 = case.roles
    kk = k - 1

    def root(d: int) -> Zsqrt5Residue:
        if d % 8 == 1:
            return Zsqrt5Residue(_root_1mod4(d, k), 0, kk)
        E = _root_1mod4(d * pow(5, -1, 1 << k) % (1 << k), k)
        return Zsqrt5Residue.from_uv(0, E, kk)

    rb, rc = root(F.radicand(o1)), root(F.radicand(o2))
    kappa, _ = F.basis_product(o1, o2)
    prod = rb * rc
    A = prod.x * pow(kappa, -1, 1 << kk)
    sb, sc = signs
    return {o1: rb * sb, o2: rc * sc, dist: Zsqrt5Residue(sb * sc * A, 0, kk)}


def dyadic_test(S: BiquadElem, V: int = 1, mode: str = "sound") -> PlaceCertificate:
    """Dyadic condition for V*S with S primitive.

    ``mode="literal"`` evaluates a single substitution (and the integrality
    form in the ramified case); ``mode="sound"`` evaluates every dyadic
    place. Both results are recorded in the certificate either way.
    """
    F = S.field
    case = dyadic_case(F)
    data: dict = {"case": case.kind}
    if case.roles:
        data["roles"] = list(case.radicands(F))
    if case.kind == ONE_PLACE:
        return PlaceCertificate("dyadic", "one place: reciprocity shortcut", True, 2, data)

    if case.kind == SPLIT_RAMIFIED:
        literal_pass, f = ramified_dyadic_test(S, V)
        data["literal"] = {"f": f, "pass": literal_pass}
        places = []
        for f_loc, u in ramified_place_values(S * V, case):
            places.append({"f": f_loc, "unit_mod4": u, "pass": u == 1})
        rule_literal = "split-ramified: V*S = 2^f(2S'+1) integrality"
        rule_sound = "split-ramified: local norm unit = 1 mod 4 at both places"
    else:
        places = []
        for signs in place_signs(case):
            r = substitute_auto(S, case, signs)
            h = r.unit * V
            if case.kind == SPLIT_INERT:
                ok = unit_is_sum_q2sqrt5(h)
                shown = [str(h.u), str(h.v)]
            else:
                ok = unit_is_sum_q2(h.x)
                shown = h.x % (1 << h.k)
            places.append({"signs": list(signs), "f": r.f, "unit": shown, "pass": ok})
        literal_pass = places[0]["pass"]
        data["literal"] = {"f": places[0]["f"], "pass": literal_pass}
        if case.kind == SPLIT_INERT:
            rule_literal = "split-inert: V*S'' in {1, 3, (+-3+-sqrt5)/2} mod 4 (one substitution)"
            rule_sound = "split-inert: residue test at both places"
        else:
            rule_literal = "completely split: V*S'' = 1 mod 4 (one substitution)"
            rule_sound = "completely split: residue test at all four places"
        data["max_f"] = max(pl["f"] for pl in places)
    data["places"] = places
    sound_pass = all(pl["pass"] for pl in places)
    data["divergence"] = literal_pass != sound_pass
    if mode == "literal":
        return PlaceCertificate("dyadic", rule_literal, literal_pass, 2, data)
    return PlaceCertificate("dyadic", rule_sound, sound_pass, 2, data)
