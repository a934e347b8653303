"""Top-level decision: is an element of Q(sqrt a, sqrt b) a sum of two squares?

The element is normalized as Q^2 * U * V * S0 with S0 primitive, U a product
of distinct primes 1, 2 mod 4 and V a product of distinct primes 3 mod 4.
Q and U never change a local symbol (-1, .); V does, so every local check
runs on V*S0. Places are visited in a fixed order: infinite, odd, dyadic.
The single-dyadic-place shortcut is only valid once everything else passed.

``mode="literal"`` uses the shortcut forms of the rules: a prime of V that
divides neither abc nor N(S) fails outright, a single dyadic substitution
decides, and the split-ramified dyadic case uses an integrality test. Those
shortcuts reject some genuine sums, so the default ``mode="sound"`` checks
every place instead; certificates record both outcomes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from .arith import factorize, fraction_str, squarefree_decompose, to_fraction
from .biquad import (
    BiquadElem,
    content_split,
    embedding_signs,
    is_totally_positive,
    make_field,
    norm_total,
    sqrt_elem,
)
from .certificate import PlaceCertificate
from .dyadic import dyadic_test
from .errors import IncompleteFactorization, ZeroElement
from .odd_places import (
    AUTO,
    SPLIT,
    classify_odd_place,
    split_place_test,
    split_place_values,
    ramified_pair_test,
    ramified_pair_values,
)

MODES = ("sound", "literal")


@dataclass(frozen=True)
class Normalization:
    Q: Fraction
    U: int
    V: int
    S0: BiquadElem

    def to_dict(self) -> dict[str, str]:
        return {"Q": fraction_str(self.Q), "U": str(self.U), "V": str(self.V)}


@dataclass
class Verdict:
    is_sum: bool | None
    certificates: list[PlaceCertificate] = field(default_factory=list)
    witness: tuple[BiquadElem, BiquadElem] | None = None
    incomplete: bool = False
    normalization: Normalization | None = None
    mode: str = "sound"

    @property
    def verdict(self) -> bool | str:
        return "unknown" if self.is_sum is None else self.is_sum

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "verdict": self.verdict,
            "mode": self.mode,
            "places": [c.to_dict() for c in self.certificates],
        }
        if self.witness is not None:
            x, y = self.witness
            out["witness"] = {
                "x": [fraction_str(q) for q in x.s],
                "y": [fraction_str(q) for q in y.s],
            }
        if self.normalization is not None:
            out["normalization"] = self.normalization.to_dict()
        if self.incomplete:
            out["incomplete"] = True
        return out


def normalize(T: BiquadElem, budget: int | None = None) -> Normalization:
    """Split T = Q^2 U V S0. A negative content sign stays inside S0."""
    if not T:
        raise ZeroElement("cannot normalize zero")
    q, S0 = content_split(T)
    n, d = q.numerator, q.denominator
    s, m = squarefree_decompose(n * d, budget)
    fac = factorize(m, budget).require_complete()
    U = V = 1
    for p in fac.primes:
        if p % 4 == 3:
            V *= p
        else:
            U *= p
    return Normalization(Fraction(s, d), U, V, S0)


def _infinite_certificate(S: BiquadElem) -> PlaceCertificate:
    F = S.field
    if not F.is_real:
        return PlaceCertificate("infinite", "imaginary field: no real places", True)
    ok = is_totally_positive(S)
    return PlaceCertificate(
        "infinite", "totally positive", ok, data={"signs": embedding_signs(S)}
    )


def _odd_certificate(S: BiquadElem, p: int, V: int, N: int, mode: str) -> PlaceCertificate:
    F = S.field
    pV = V % p == 0
    pN = N % p == 0
    data: dict[str, Any] = {"p_divides_V": pV, "p_divides_norm": pN}
    if mode == "literal" and pV and not pN and F.a * F.b * F.c % p:
        return PlaceCertificate("odd", "prime of V outside abc*N(S)", False, p, data)
    pat = classify_odd_place(F, p)
    if pat.kind == AUTO:
        data["reason"] = pat.reason
        return PlaceCertificate("odd", f"AutoPass (Q_{p}(sqrt -1) subfield)", True, p, data)
    if pat.kind == SPLIT:
        vals = split_place_values(S, pat)
        data.update(pattern="completely split", roots=list(pat.roots), values=vals)
        target = 2 if pV else 0
        return PlaceCertificate(
            "odd", f"split valuations: all = {target} mod 4", split_place_test(vals, pV), p, data
        )
    vals = ramified_pair_values(S, pat)
    pair = [F.radicand(i) for i in pat.pair]
    data.update(pattern="ramified", divisible=pair, C=pat.C, values=vals)
    return PlaceCertificate("odd", "ramified valuations: all = 0 mod 4", ramified_pair_test(vals), p, data)


def decide_primitive(
    S: BiquadElem, V: int = 1, budget: int | None = None, mode: str = "sound"
) -> Verdict:
    """Local conditions for V*S with S primitive and V squarefree, primes 3 mod 4."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if not S.is_primitive():
        raise ValueError("decide_primitive needs a primitive element")
    certs = [_infinite_certificate(S)]
    N = int(norm_total(S))
    fac = factorize(N, budget)
    primes = {p for p in fac.primes if p % 4 == 3}
    primes |= {p for p, _ in factorize(V).factors}
    for p in sorted(primes):
        certs.append(_odd_certificate(S, p, V, N, mode))
    incomplete = not fac.complete
    if incomplete:
        certs.append(
            PlaceCertificate("odd", "unfactored cofactor", False, data={"cofactor": str(fac.cofactor)})
        )
        failed = any(not c.passed for c in certs[:-1])
        return Verdict(False if failed else None, certs, incomplete=True, mode=mode)
    certs.append(dyadic_test(S, V, mode))
    return Verdict(all(c.passed for c in certs), certs, mode=mode)


def decide(T: BiquadElem, budget: int | None = None, mode: str = "sound") -> Verdict:
    if not T:
        z = T.field.elem(0)
        return Verdict(True, witness=(z, z), mode=mode)
    try:
        norm = normalize(T, budget)
    except IncompleteFactorization as exc:
        cert = PlaceCertificate(
            "odd", "unfactored content", False, data={"cofactor": str(exc.cofactor)}
        )
        return Verdict(None, [cert], incomplete=True, mode=mode)
    v = decide_primitive(norm.S0, norm.V, budget, mode)
    v.normalization = norm
    if v.is_sum:
        r = sqrt_elem(T)
        if r is not None:
            v.witness = (r, T.field.elem(0))
    return v


def decide_coords(a: int, b: int, coords, budget: int | None = None, mode: str = "sound") -> Verdict:
    F = make_field(a, b)
    return decide(F.elem(*(to_fraction(c) for c in coords)), budget, mode)


def _place_line(c: PlaceCertificate) -> str:
    status = "pass" if c.passed else "FAIL"
    if c.type == "infinite":
        return f"infinite: {c.rule} [{status}]"
    if c.type == "dyadic":
        case = c.data.get("case")
        if case == "one_place":
            return f"dyadic: OnePlace shortcut (reciprocity) [{status}]"
        places = c.data.get("places", [])
        bits = ", ".join(
            f"f={pl['f']} {'ok' if pl['pass'] else 'bad'}" for pl in places
        )
        extra = " DIVERGES from single substitution" if c.data.get("divergence") else ""
        return f"dyadic: {case}: {c.rule}; {bits}{extra} [{status}]"
    if c.p is None:
        return f"odd: {c.rule} {c.data} [{status}]"
    vals = c.data.get("values")
    tail = f" values={vals}" if vals is not None else ""
    return f"p={c.p}: {c.rule}{tail} [{status}]"


def explain(v: Verdict) -> dict[str, Any]:
    """Certificate dump: human-readable lines plus the structured data."""
    lines = [_place_line(c) for c in v.certificates]
    if v.normalization is not None:
        n = v.normalization
        lines.insert(0, f"normalization: Q={fraction_str(n.Q)} U={n.U} V={n.V}")
    lines.append(f"verdict: {v.verdict}")
    return {"verdict": v.verdict, "lines": lines, "odd_primes": [c.p for c in v.certificates if c.type == "odd" and c.p], "structured": v.to_dict()}


def format_explain(v: Verdict) -> str:
    return "\n".join(explain(v)["lines"])
