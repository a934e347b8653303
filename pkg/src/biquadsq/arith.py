"""Integer and rational kernels: factorization, Legendre symbols, modular and
2-adic square roots, valuations.

Everything here is exact. Nothing touches floating point.
"""

from __future__ import annotations

import math
import os
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

import numpy as np

from .errors import IncompleteFactorization, NotA2adicSquare, NotAResidue

Rational = Union[int, Fraction]

TRIAL_LIMIT = 10**6
DEFAULT_BUDGET = int(os.environ.get("BIQUADSQ_FACTOR_BUDGET", "200000"))

# Miller-Rabin with the first 13 primes as bases is deterministic below this
# bound (Sorenson & Webster 2015).
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_DETERMINISTIC_BOUND = 3317044064679887385961981


@lru_cache(maxsize=1)
def _small_primes() -> tuple[int, ...]:
    sieve = np.ones(TRIAL_LIMIT + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return tuple(int(p) for p in np.flatnonzero(sieve))


def is_probable_prime(n: int) -> bool:
    """Strong Miller-Rabin test; deterministic for n below ~3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_certified_prime(n: int) -> bool:
    return n < _MR_DETERMINISTIC_BOUND and is_probable_prime(n)


@dataclass(frozen=True)
class Factorization:
    sign: int
    factors: tuple[tuple[int, int], ...] = ()
    cofactor: int = 1

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def value(self) -> int:
        out = self.sign * self.cofactor
        for p, e in self.factors:
            out *= p**e
        return out

    def require_complete(self) -> "Factorization":
        if not self.complete:
            raise IncompleteFactorization(self.value(), self.cofactor)
        return self


def _brent(n: int, rng: random.Random, budget: int) -> tuple[int | None, int]:
    """One Pollard-Brent run; returns (factor or None, iterations spent)."""
    y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
    g = r = q = 1
    spent = 0
    x = ys = y
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        spent += r
        r *= 2
        if spent > budget:
            return None, spent
    if g == n:
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    if g == n:
        return None, spent
    return g, spent


def factorize(n: int, budget: int | None = None, seed: int = 0) -> Factorization:
    """Factor a nonzero integer.

    Trial division up to 10**6, then Pollard-Brent on whatever is left with a
    total iteration budget. Prime factors must certify deterministically; a
    leftover that cannot be split or certified stays in ``cofactor``.
    """
    if n == 0:
        raise ValueError("cannot factor 0")
    budget = DEFAULT_BUDGET if budget is None else budget
    if budget <= 0:
        raise ValueError("budget must be positive")
    sign = -1 if n < 0 else 1
    m = abs(n)
    found: dict[int, int] = {}
    for p in _small_primes():
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    leftover = 1
    if m > 1:
        rng = random.Random(seed)
        stack = [m]
        remaining = budget
        while stack:
            x = stack.pop()
            if x < TRIAL_LIMIT**2 or is_certified_prime(x):
                # below 10**12 with no factor under 10**6 means prime
                found[x] = found.get(x, 0) + 1
                continue
            if is_probable_prime(x) or remaining <= 0:
                leftover *= x
                continue
            d, spent = _brent(x, rng, remaining)
            remaining -= spent
            if d is None:
                if remaining > 0:
                    stack.append(x)  # fresh polynomial on the next pass
                else:
                    leftover *= x
                continue
            stack.extend((d, x // d))
    factors = tuple(sorted(found.items()))
    return Factorization(sign, factors, leftover)


def prime_factors(n: int, budget: int | None = None, seed: int = 0) -> list[int]:
    """Distinct primes dividing ``n``; raises when factorization is incomplete."""
    return factorize(n, budget, seed).require_complete().primes


def squarefree_decompose(n: int, budget: int | None = None) -> tuple[int, int]:
    """Return ``(s, m)`` with ``n == s*s*m`` and ``m`` squarefree, same sign as n."""
    fac = factorize(n, budget).require_complete()
    s, m = 1, fac.sign
    for p, e in fac.factors:
        s *= p ** (e // 2)
        if e % 2:
            m *= p
    return s, m


def is_squarefree(n: int) -> bool:
    return n != 0 and squarefree_decompose(n)[0] == 1


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    r = pow(a % p, (p - 1) // 2, p)
    return -1 if r == p - 1 else r


def sqrt_mod_p(a: int, p: int) -> int:
    """Square root of ``a`` mod odd prime ``p``, canonical in ``[0, (p-1)/2]``."""
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        raise NotAResidue(f"{a} is not a square mod {p}")
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
    else:
        # Tonelli-Shanks
        q, s = p - 1, 0
        while q % 2 == 0:
            q //= 2
            s += 1
        z = 2
        while legendre(z, p) != -1:
            z += 1
        m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
        while t != 1:
            i, t2 = 0, t
            while t2 != 1:
                t2 = t2 * t2 % p
                i += 1
            b = pow(c, 1 << (m - i - 1), p)
            m, c = i, b * b % p
            t, r = t * c % p, r * b % p
    return min(r, p - r)


def sqrt_mod_pk(a: int, p: int, k: int, root: int | None = None) -> int:
    """Hensel-lift a square root of a unit ``a`` from mod p to mod p**k.

    ``root`` picks which of the two roots mod p to lift.
    """
    r = sqrt_mod_p(a, p) if root is None else root % p
    if a % p == 0:
        raise NotAResidue("lifting needs a unit")
    mod = p
    for _ in range(1, k):
        mod *= p
        r = (r - (r * r - a) * pow(2 * r, -1, mod)) % mod
    return r % p**k


def hensel_sqrt_2adic(n: int, k: int = 8) -> int:
    """Odd ``E`` with ``E*E == n (mod 2**k)`` for ``n == 1 (mod 8)``.

    The four roots mod 2**k are ±E, ±E + 2**(k-1); the representative
    returned is the unique one in ``[1, 2**(k-2) - 1]``.
    """
    if k < 3:
        raise ValueError("precision must be at least 3")
    if n % 8 != 1:
        raise NotA2adicSquare(f"{n} is not 1 mod 8")
    x = 1
    for i in range(3, k):
        if (x * x - n) % (1 << (i + 1)):
            x += 1 << (i - 1)
    half = 1 << (k - 1)
    x %= half
    if x > half // 2:
        x = half - x
    return x


def v_p(n: Rational, p: int) -> int:
    """Exact p-adic valuation of a nonzero rational."""
    n = Fraction(n)
    if n == 0:
        raise ValueError("valuation of zero")
    return _v_int(n.numerator, p) - _v_int(n.denominator, p)


def _v_int(n: int, p: int) -> int:
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def v_p_or_inf(n: int, p: int) -> float:
    return math.inf if n == 0 else _v_int(n, p)


def hilbert_minus_one(n: Rational, p: int) -> int:
    """Hilbert symbol (-1, n) over Q_p; p = 2 or an odd prime."""
    n = Fraction(n)
    if n == 0:
        raise ValueError("symbol of zero")
    if p == 2:
        num, den = n.numerator, n.denominator
        num >>= _v_int(num, 2)
        den >>= _v_int(den, 2)
        return 1 if (num * den) % 4 == 1 else -1
    if p % 4 == 1:
        return 1
    return -1 if v_p(n, p) % 2 else 1


def is_square_rational(q: Rational) -> bool:
    return rational_sqrt(q) is not None


def rational_sqrt(q: Rational) -> Fraction | None:
    q = Fraction(q)
    if q < 0:
        return None
    rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if rn * rn == q.numerator and rd * rd == q.denominator:
        return Fraction(rn, rd)
    return None


def to_fraction(x) -> Fraction:
    """Parse an int, Fraction or ``"n/d"`` string into a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"not an exact rational: {x!r}")


def fraction_str(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
