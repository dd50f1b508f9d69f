"""Benchmark the float64 Jacobi kernels: numba JIT versus numpy slices.

Times the cyclic-Jacobi eigensolver on random symmetric matrices for
both backends, with numpy.linalg.eigvalsh as the LAPACK yardstick, and
reports per-size medians.  The numba column includes a warmup call so
JIT compilation is not billed to the measurement.

Usage:
    python benchmarks/bench_jacobi.py [--sizes 20,40,80] [--repeats 5]
"""

import argparse
import statistics
import time

import numpy as np

from anharm._kernels import HAS_NUMBA, eigvalsh_f64


def _random_symmetric(n, seed):
    rng = np.random.default_rng(seed)
    a = rng.uniform(-1, 1, size=(n, n))
    return (a + a.T) / 2


def _time(fn, repeats):
    samples = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        samples.append(time.perf_counter() - t0)
    return statistics.median(samples)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="20,40,80,160")
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    backends = ["numpy"]
    if HAS_NUMBA:
        # trigger JIT compilation outside the timed region
        eigvalsh_f64(_random_symmetric(8, args.seed), backend="numba")
        backends.append("numba")
    else:
        print("numba not installed; timing the numpy backend only")

    header = ["n"] + [f"jacobi-{b}" for b in backends] + ["lapack", "max|diff|"]
    print("  ".join(f"{h:>14s}" for h in header))
    for n in sizes:
        a = _random_symmetric(n, args.seed + n)
        row = [f"{n:>14d}"]
        results = {}
        for b in backends:
            results[b] = eigvalsh_f64(a, backend=b)
            row.append(f"{_time(lambda: eigvalsh_f64(a, backend=b), args.repeats):>13.4f}s")
        lapack = np.linalg.eigvalsh(a)
        row.append(f"{_time(lambda: np.linalg.eigvalsh(a), args.repeats):>13.4f}s")
        worst = max(float(np.max(np.abs(results[b] - lapack))) for b in backends)
        row.append(f"{worst:>14.2e}")
        print("  ".join(row))


if __name__ == "__main__":
    main()
