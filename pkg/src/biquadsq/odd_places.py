"""Local conditions at odd primes p = 3 (mod 4).

At such a prime the symbol (-1, S) is trivial at every place whose
completion contains Q_p(sqrt -1). The remaining places come in two shapes:
p splits completely (four places with completion Q_p), or p divides two of
the radicands while the third is a square mod p (two ramified places). In
both shapes the symbol is (-1)^v_P(S), and v_P(S) is recovered from
valuations of the subfield products T_i = S sigma_i(S), never from S itself.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import legendre, sqrt_mod_p
from .biquad import (
    BiquadElem,
    BiquadField,
    permute_roles,
    project,
    sigma,
    subfield_product,
)
from .errors import NotApplicable
from .quad import val_ramified, val_split

SPLIT = "split"
RAMIFIED = "ramified"
AUTO = "auto"


@dataclass(frozen=True)
class OddPlacePattern:
    p: int
    kind: str
    roots: tuple[int, int, int] | None = None  # (A, B, C) when split
    pair: tuple[int, int] | None = None  # radicand indices divisible by p
    C: int | None = None  # root of the third radicand when ramified
    reason: str = ""


def classify_odd_place(F: BiquadField, p: int) -> OddPlacePattern:
    if p % 4 != 3:
        raise ValueError(f"{p} is not 3 mod 4")
    divisible = tuple(i for i in (1, 2, 3) if F.radicand(i) % p == 0)
    if not divisible:
        symbols = tuple(legendre(d, p) for d in F.radicands)
        if symbols != (1, 1, 1):
            i = symbols.index(1) + 1
            return OddPlacePattern(
                p, AUTO, reason=f"Q_{p}(sqrt -1) inside completion; symbols {symbols}, "
                f"only d{i} is a square"
            )
        A, B = sqrt_mod_p(F.a, p), sqrt_mod_p(F.b, p)
        C = sqrt_mod_p(F.c, p)
        if (C * F.g - A * B) % p:
            C = p - C
        return OddPlacePattern(p, SPLIT, roots=(A, B, C))
    if len(divisible) != 2:
        raise AssertionError(f"{p} must divide exactly two radicands")
    k = ({1, 2, 3} - set(divisible)).pop()
    ls = legendre(F.radicand(k), p)
    if ls == -1:
        return OddPlacePattern(
            p, AUTO, pair=divisible,
            reason=f"Q_{p}(sqrt -1) inside completion; d{k}={F.radicand(k)} is a non-square mod {p}",
        )
    return OddPlacePattern(p, RAMIFIED, pair=divisible, C=sqrt_mod_p(F.radicand(k), p))


def minus_one_is_sum(F: BiquadField) -> bool:
    """-1 is a sum of two squares iff F is imaginary and 2 does not split completely."""
    return not F.is_real and not all(d % 8 == 1 for d in F.radicands)


def rational_prime_is_sum(q: int, F: BiquadField) -> bool:
    if q % 4 != 3:
        raise ValueError(f"{q} is not 3 mod 4")
    if any(d % q == 0 for d in F.radicands):
        raise NotApplicable(f"{q} divides a radicand of {F}")
    both_residues = legendre(F.a, q) == 1 and legendre(F.b, q) == 1
    both_one_mod_8 = F.a % 8 == 1 and F.b % 8 == 1
    return not (both_residues or both_one_mod_8)


# (sign of sqrt a root, sign of sqrt b root) for the places P1..P4
SPLIT_PLACES = ((1, 1), (1, -1), (-1, 1), (-1, -1))


def split_place_values(S: BiquadElem, pat: OddPlacePattern) -> list[int]:
    """2 v_P(S) at the four places over a completely split p.

    Place P with sqrt a = eA, sqrt b = fB, sqrt c = efC (mod P) gives
    v(T1) at (p, sqrt a - eA) + v(T2) at (p, sqrt b - fB)
    - v(sigma1 S sigma2 S) at (p, sqrt c - efC).
    """
    if pat.kind != SPLIT:
        raise ValueError("pattern is not completely split")
    p = pat.p
    A, B, C = pat.roots
    T1 = subfield_product(S, 1)
    T2 = subfield_product(S, 2)
    W3 = project(sigma(S, 1) * sigma(S, 2), 3)
    out = []
    for e, f in SPLIT_PLACES:
        out.append(
            val_split(T1, p, e * A % p)
            + val_split(T2, p, f * B % p)
            - val_split(W3, p, e * f * C % p)
        )
    return out


def split_place_test(values: list[int], p_divides_V: bool = False) -> bool:
    target = 2 if p_divides_V else 0
    return all(v % 4 == target for v in values)


def ramified_pair_values(S: BiquadElem, pat: OddPlacePattern) -> list[int]:
    """2 v_P(S) at the two ramified places, i = 1, 2.

    Roles are permuted so the radicands divisible by p come first; then
    v(T1) + v(T2) - 2 v(sigma1 S sigma2 S) at (p, sqrt c + (-1)^i C).
    """
    if pat.kind != RAMIFIED:
        raise ValueError("pattern is not ramified-split")
    p, C = pat.p, pat.C
    Sv = permute_roles(S, *pat.pair)
    T1 = subfield_product(Sv, 1)
    T2 = subfield_product(Sv, 2)
    W3 = project(sigma(Sv, 1) * sigma(Sv, 2), 3)
    base = val_ramified(T1, p) + val_ramified(T2, p)
    return [base - 2 * val_split(W3, p, (-((-1) ** i) * C) % p) for i in (1, 2)]


def ramified_pair_test(values: list[int]) -> bool:
    return all(v % 4 == 0 for v in values)
