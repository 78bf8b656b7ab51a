"""Benchmark the numba kernels against the pure-numpy fallback.

The hot loop of the package is the batched algebra pair product (one call
per product gate per evaluation batch).  Run with the backend picked by the
environment:

    python benchmarks/bench_kernels.py             # auto (numba if present)
    NACIRC_KERNELS=numpy python benchmarks/bench_kernels.py

or pass --both to fork a numpy-backend child process and print the
comparison in one table.

Representative numbers (one 2024-class x86 core, numba 0.66):

    backend   mul_arrays p=2^61-1 (1M)   pair_mul p=2^61-1 d=4 B=1024
    numba               ~6 ms                    ~7 ms  (~74 Mmul/s)
    numpy             ~127 ms                   ~28 ms  (~18 Mmul/s)
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from nacirc import kernels

CASES = [
    # (modulus, d, batch)
    (101, 4, 1024),
    (kernels.M61, 2, 4096),
    (kernels.M61, 4, 1024),
    (kernels.M61, 8, 256),
    (4611686018427387847, 4, 1024),
]


def bench_pair_mul(p, d, batch, repeats=20):
    rng = np.random.default_rng(0)
    hi = min(p, 2**62)
    xb = (rng.integers(0, hi, size=(batch, d, d + 1, d + 1), dtype=np.int64)) % p
    yb = (rng.integers(0, hi, size=(batch, d, d + 1, d + 1), dtype=np.int64)) % p
    xs = rng.integers(0, hi, size=batch, dtype=np.int64) % p
    ys = rng.integers(0, hi, size=batch, dtype=np.int64) % p
    kernels.pair_mul(xb, xs, yb, ys, p, 2)  # warm up / compile
    t0 = time.perf_counter()
    for _ in range(repeats):
        kernels.pair_mul(xb, xs, yb, ys, p, 2)
    dt = (time.perf_counter() - t0) / repeats
    ops = batch * d * (d + 1) ** 3  # mulmod count of the slice products
    return dt, ops / dt / 1e6


def bench_mul_arrays(p, size=1 << 20, repeats=10):
    rng = np.random.default_rng(1)
    a = rng.integers(0, min(p, 2**62), size=size, dtype=np.int64) % p
    b = rng.integers(0, min(p, 2**62), size=size, dtype=np.int64) % p
    kernels.mul_arrays(a, b, p)
    t0 = time.perf_counter()
    for _ in range(repeats):
        kernels.mul_arrays(a, b, p)
    dt = (time.perf_counter() - t0) / repeats
    return dt, size / dt / 1e6


def run():
    print(f"backend for M61: {kernels.backend_name(kernels.M61)}")
    dt, rate = bench_mul_arrays(kernels.M61)
    print(f"mul_arrays        p=2^61-1  1M elems           {dt * 1e3:8.2f} ms  {rate:8.1f} Mop/s")
    for p, d, batch in CASES:
        dt, rate = bench_pair_mul(p, d, batch)
        tag = "2^61-1" if p == kernels.M61 else str(p)
        print(f"pair_mul          p={tag:<20} d={d} B={batch:<5} {dt * 1e3:8.2f} ms  {rate:8.1f} Mmul/s")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--both", action="store_true", help="also run the numpy backend in a child process")
    args = ap.parse_args()
    run()
    if args.both and kernels.backend_name(kernels.M61) == "numba":
        print("\n--- NACIRC_KERNELS=numpy ---")
        sys.stdout.flush()
        env = dict(os.environ, NACIRC_KERNELS="numpy")
        subprocess.run([sys.executable, os.path.abspath(__file__)], env=env, check=True)


if __name__ == "__main__":
    main()
