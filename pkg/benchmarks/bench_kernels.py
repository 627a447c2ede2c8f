"""Benchmark the compiled transform kernels against the numpy fallback.

Times the two hot operations, spherical Bessel evaluation and the
transform contraction, at sizes representative of one momentum build,
and a full end-to-end momentum construction with each backend.

Run: python benchmarks/bench_kernels.py
"""

import argparse
import time

import numpy as np

from chainfo import _kernels_py
from chainfo import kernels
from chainfo.momentum import build_momentum
from chainfo.radial import Confinement, QuantumState, solve_state

try:
    from chainfo import _kernels
except ImportError:
    _kernels = None


def _best_of(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_bessel(backend, n, repeats):
    x = np.linspace(0.0, 80.0, n)
    return _best_of(lambda: [backend.sph_bessel_j_array(l, x)
                             for l in range(5)], repeats)


def bench_contract(backend, n_p, n_r, repeats):
    rng = np.random.default_rng(11)
    p = np.sort(rng.uniform(1e-3, 60.0, n_p))
    r = np.sort(rng.uniform(1e-4, 20.0, n_r))
    f = rng.normal(size=n_r)
    return _best_of(lambda: backend.transform_contract(4, p, r, f), repeats)


def bench_momentum_build(repeats):
    sol = solve_state(QuantumState.from_label("5g"), Confinement(100.0))
    return _best_of(lambda: build_momentum(sol), repeats)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args()

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.insert(0, ("cython", _kernels))
    print(f"active backend: {kernels.backend_name()}")

    results = {}
    for name, mod in backends:
        t_b = bench_bessel(mod, 200_000, args.repeats)
        t_c = bench_contract(mod, 800, 2000, args.repeats)
        results[name] = (t_b, t_c)
        print(f"{name:>7}: bessel(5 x 200k) {t_b * 1e3:8.2f} ms   "
              f"contract(800 x 2000) {t_c * 1e3:8.2f} ms")

    if len(results) == 2:
        pb = results["python"]
        cb = results["cython"]
        print(f"speedup: bessel {pb[0] / cb[0]:.2f}x, "
              f"contract {pb[1] / cb[1]:.2f}x")

    t_m = bench_momentum_build(args.repeats)
    print(f"end-to-end momentum build (5g, r_c=100): {t_m:.2f} s "
          f"[{kernels.backend_name()} backend]")


if __name__ == "__main__":
    main()
