"""Compare the numba and numpy witness-scan kernels.

    python benchmarks/bench_kernels.py [--heights 3 5 7] [--repeat 5]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from biquadsq import _kernels
from biquadsq.biquad import make_field


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--heights", type=int, nargs="+", default=[3, 5, 7])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    F = make_field(-7, 17)
    base = np.array([-92 * 16, 16, 21 * 16, -16], dtype=np.int64)
    tabs, mods = _kernels.SQUARE_TABLES, _kernels.MODULI_ARR
    consts = (np.int64(1), np.int64(F.a), np.int64(F.b), np.int64(F.c), np.int64(F.g))
    if _kernels.HAVE_NUMBA:  # compile outside the timed region
        X = _kernels.box_vectors(1)
        _kernels.candidate_mask_numba(X, base, *consts, tabs, mods)
    print(f"{'height':>6} {'rows':>9} {'numpy s':>10} {'numba s':>10} {'speedup':>8} {'survivors':>9}")
    for h in args.heights:
        X = _kernels.box_vectors(h)
        t_np, (m_np, w_np) = best_of(
            lambda: _kernels.candidate_mask_numpy(X, base, *consts), args.repeat
        )
        if _kernels.HAVE_NUMBA:
            t_nb, (m_nb, w_nb) = best_of(
                lambda: _kernels.candidate_mask_numba(X, base, *consts, tabs, mods), args.repeat
            )
            assert np.array_equal(m_np, m_nb) and np.array_equal(w_np, w_nb)
            speed = f"{t_np / t_nb:8.1f}"
            t_nb_s = f"{t_nb:10.4f}"
        else:
            speed, t_nb_s = "     n/a", "       n/a"
        print(f"{h:>6} {len(X):>9} {t_np:10.4f} {t_nb_s} {speed} {int(m_np.sum()):>9}")


if __name__ == "__main__":
    main()
