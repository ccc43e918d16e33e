"""Compiled vs numpy kernels.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times rref mod p, the batched right-Leibniz filter and one exhaustive
isomorphism search.  The first compiled call is reported separately
because it includes JIT compilation.
"""

import argparse
import time

import numpy as np

from leibhol import _kernels as K
from leibhol import catalog
from leibhol.fields import GF
from leibhol.holomorph import lie_holomorph
from leibhol.iso import _kernel_args, _plan, characteristic_subspaces


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def search_args(L, M):
    cl, cm = characteristic_subspaces(L), characteristic_subspaces(M)
    args, _ = _kernel_args(L, M, _plan(L, cl, cm), cl, cm, -1)
    return args


def cases():
    rng = np.random.default_rng(0)
    mat = rng.integers(0, 7, size=(60, 80)).astype(np.int64)
    batch = rng.integers(0, 3, size=(20000, 3, 3, 3)) * (rng.random((20000, 3, 3, 3)) < 0.1)
    batch = np.ascontiguousarray(batch.astype(np.int64))
    F3 = GF(3)
    A = lie_holomorph(catalog.get("L_4", fld=F3)).algebra
    B = lie_holomorph(catalog.get("L_5", {"alpha": 2}, F3)).algebra
    return [
        ("rref_modp 60x80 mod 7",
         lambda: K.rref_modp_numba(mat, np.int64(7)), lambda: K.rref_modp_numpy(mat, 7)),
        ("filter_leibniz 20000 x dim 3 mod 3",
         lambda: K.filter_leibniz_numba(batch, np.int64(3)), lambda: K.filter_leibniz_numpy(batch, 3)),
        ("iso_search hol(L_4) vs hol(L_5(2)) over F_3",
         lambda: K.iso_search_numba(*search_args(A, B)), lambda: K.iso_search_numpy(*search_args(A, B))),
    ]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if K.rref_modp_numba is None:
        print("numba not importable; nothing to compare")
        return
    print(f"{'kernel':<46}{'first':>10}{'numba':>10}{'numpy':>10}{'ratio':>8}")
    for name, fast, slow in cases():
        t0 = time.perf_counter()
        fast()
        first = time.perf_counter() - t0
        tf = best_of(fast, args.repeat)
        ts = best_of(slow, args.repeat)
        print(f"{name:<46}{first:>9.3f}s{tf:>9.4f}s{ts:>9.4f}s{ts / tf:>7.1f}x")


if __name__ == "__main__":
    main()
