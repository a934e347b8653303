"""Hot loop of the witness search.

For every numerator vector X in the search box the oracle needs
w = base - scale * X^2 (all int64) and a cheap necessary test that w is a
square in the field: its norm must be a square modulo a handful of small
moduli. Survivors go on to exact square extraction in Python.

Two interchangeable implementations: a numba-compiled loop and a vectorized
numpy version. ``BIQUADSQ_NUMBA=0`` forces numpy; numba is also skipped
when it cannot be imported.
"""

from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("BIQUADSQ_NUMBA", "1") not in ("0", "false", "no")

MODULI = (64, 63, 65, 11, 17, 19, 23, 29, 31, 37, 41, 43)


def _square_tables(moduli=MODULI) -> np.ndarray:
    width = max(moduli)
    tab = np.zeros((len(moduli), width), dtype=np.bool_)
    for i, m in enumerate(moduli):
        tab[i, (np.arange(m, dtype=np.int64) ** 2) % m] = True
    return tab


SQUARE_TABLES = _square_tables()
MODULI_ARR = np.array(MODULI, dtype=np.int64)


def value_order(height: int) -> np.ndarray:
    """0, 1, -1, 2, -2, ..., height, -height."""
    out = [0]
    for v in range(1, height + 1):
        out += [v, -v]
    return np.array(out, dtype=np.int64)


def box_vectors(height: int) -> np.ndarray:
    """All numerator vectors with |X_i| <= height, first coordinate slowest."""
    vals = value_order(height)
    grid = np.stack(np.meshgrid(vals, vals, vals, vals, indexing="ij"), axis=-1)
    return grid.reshape(-1, 4)


def squares_numpy(X: np.ndarray, a: int, b: int, c: int, g: int) -> np.ndarray:
    x0, x1, x2, x3 = X[:, 0], X[:, 1], X[:, 2], X[:, 3]
    out = np.empty_like(X)
    out[:, 0] = x0 * x0 + a * x1 * x1 + b * x2 * x2 + c * x3 * x3
    out[:, 1] = 2 * (x0 * x1 + (b // g) * x2 * x3)
    out[:, 2] = 2 * (x0 * x2 + (a // g) * x1 * x3)
    out[:, 3] = 2 * (x0 * x3 + g * x1 * x2)
    return out


def candidate_mask_numpy(X, base, scale, a, b, c, g, tables=SQUARE_TABLES, moduli=MODULI_ARR):
    W = base[None, :] - scale * squares_numpy(X, a, b, c, g)
    mask = np.ones(X.shape[0], dtype=np.bool_)
    bg = b // g
    for i in range(moduli.shape[0]):
        m = moduli[i]
        w = W % m
        u = (w[:, 0] ** 2 + a * w[:, 1] ** 2 - b * w[:, 2] ** 2 - c * w[:, 3] ** 2) % m
        v = (2 * w[:, 0] * w[:, 1] - 2 * bg * w[:, 2] * w[:, 3]) % m
        n = (u * u - a * ((v * v) % m)) % m
        mask &= tables[i][n]
    return mask, W


def _candidate_mask_loop(X, base, scale, a, b, c, g, tables, moduli):
    M = X.shape[0]
    mask = np.zeros(M, dtype=np.bool_)
    W = np.empty((M, 4), dtype=np.int64)
    ag = a // g
    bg = b // g
    for r in range(M):
        x0, x1, x2, x3 = X[r, 0], X[r, 1], X[r, 2], X[r, 3]
        w0 = base[0] - scale * (x0 * x0 + a * x1 * x1 + b * x2 * x2 + c * x3 * x3)
        w1 = base[1] - scale * 2 * (x0 * x1 + bg * x2 * x3)
        w2 = base[2] - scale * 2 * (x0 * x2 + ag * x1 * x3)
        w3 = base[3] - scale * 2 * (x0 * x3 + g * x1 * x2)
        W[r, 0] = w0
        W[r, 1] = w1
        W[r, 2] = w2
        W[r, 3] = w3
        ok = True
        for i in range(moduli.shape[0]):
            m = moduli[i]
            y0, y1, y2, y3 = w0 % m, w1 % m, w2 % m, w3 % m
            u = (y0 * y0 + a * y1 * y1 - b * y2 * y2 - c * y3 * y3) % m
            v = (2 * y0 * y1 - 2 * bg * y2 * y3) % m
            n = (u * u - a * ((v * v) % m)) % m
            if not tables[i, n]:
                ok = False
                break
        mask[r] = ok
    return mask, W


if HAVE_NUMBA:
    candidate_mask_numba = njit(cache=True)(_candidate_mask_loop)
else:  # pragma: no cover
    candidate_mask_numba = None


def candidate_mask(X, base, scale, a, b, c, g):
    """Mask of box rows whose residual w could be a square, plus the residuals."""
    base = np.asarray(base, dtype=np.int64)
    args = (X, base, np.int64(scale), np.int64(a), np.int64(b), np.int64(c), np.int64(g))
    if USE_NUMBA:
        return candidate_mask_numba(*args, SQUARE_TABLES, MODULI_ARR)
    return candidate_mask_numpy(*args)
