"""Prime-ideal powers in a quadratic ring of integers, as explicit lattices.

Elements of O = Z[w] are integer pairs (u, t) meaning u + t*w, where
w = sqrt(d), or w = (1 + sqrt d)/2 when d = 1 mod 4. An ideal is stored as
the Hermite form (a, b, c): Z-basis a and b + c*w. Products are computed
from generators, so nothing here knows about valuations or norms.
"""

from __future__ import annotations

import math

import numpy as np


class Ring:
    def __init__(self, d: int):
        self.d = d
        self.half = d % 4 == 1

    def mul(self, x, y):
        (u1, t1), (u2, t2) = x, y
        if self.half:  # w^2 = w + (d - 1)/4
            q = (self.d - 1) // 4
            return (u1 * u2 + t1 * t2 * q, u1 * t2 + u2 * t1 + t1 * t2)
        return (u1 * u2 + t1 * t2 * self.d, u1 * t2 + u2 * t1)

    def from_xy(self, x: int, y: int):
        """x + y sqrt(d) in (u, t) coordinates."""
        if self.half:  # sqrt d = 2w - 1
            return (x - y, 2 * y)
        return (x, y)

    def hnf(self, vectors):
        rows = [list(v) for v in vectors if any(v)]
        while sum(1 for r in rows if r[1]) > 1:
            rows.sort(key=lambda r: (r[1] == 0, abs(r[1])))
            piv = rows[0]
            for r in rows[1:]:
                if r[1]:
                    q = r[1] // piv[1]
                    r[0] -= q * piv[0]
                    r[1] -= q * piv[1]
            rows = [r for r in rows if any(r)]
        lead = [r for r in rows if r[1]]
        rest = [r[0] for r in rows if not r[1]]
        a = 0
        for v in rest:
            a = math.gcd(a, v)
        b, c = lead[0]
        if c < 0:
            b, c = -b, -c
        if a == 0:
            raise ValueError("not a full lattice")
        return (a, b % a, c)

    def basis(self, ideal):
        a, b, c = ideal
        return [(a, 0), (b, c)]

    def ideal(self, *gens):
        vecs = []
        for g in gens:
            vecs += [g, self.mul(g, (0, 1))]
        return self.hnf(vecs)

    def product(self, I, J):
        return self.hnf([self.mul(x, y) for x in self.basis(I) for y in self.basis(J)])

    def contains(self, ideal, u, t):
        a, b, c = ideal
        u, t = np.asarray(u), np.asarray(t)
        ok = t % c == 0
        k = t // c
        return ok & ((u - k * b) % a == 0)


def prime_ideal(R: Ring, p: int, root: int | None = None):
    """(p, sqrt d) when p | d, else (p, sqrt d - root)."""
    s = R.from_xy(0, 1)
    gen = s if root is None else (s[0] - root, s[1])
    return R.ideal((p, 0), gen)


def valuations(R: Ring, P, x, y, max_power: int = 64):
    """Largest k with x + y sqrt d in P^k, elementwise over integer arrays."""
    x, y = np.asarray(x, dtype=object), np.asarray(y, dtype=object)
    u, t = R.from_xy(x, y)
    out = np.zeros(np.shape(x), dtype=np.int64)
    alive = np.ones(np.shape(x), dtype=bool)
    power = P
    for _ in range(max_power):
        inside = R.contains(power, u, t).astype(bool) & alive
        if not inside.any():
            return out
        out += inside
        alive = inside
        power = R.product(power, P)
    raise RuntimeError("max_power too small")
