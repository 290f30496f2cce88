"""Compare the numba kernels against the pure-numpy fallback path.

Run twice to see both sides, or let this script spawn its own comparison:

    python3 benchmarks/bench_kernels.py            # measures the active path
    BOSONIQ_NO_NUMBA=1 python3 benchmarks/bench_kernels.py

Without arguments the script re-executes itself under BOSONIQ_NO_NUMBA=1 and
prints a side-by-side table.
"""

import os
import subprocess
import sys
import time

import numpy as np


def make_terms(rng, n_terms, n_words):
    xs = rng.integers(0, 2**63, size=(n_terms, n_words), dtype=np.int64).astype(np.uint64)
    zs = rng.integers(0, 2**63, size=(n_terms, n_words), dtype=np.int64).astype(np.uint64)
    coeffs = (rng.normal(size=n_terms) + 1j * rng.normal(size=n_terms)).astype(np.complex128)
    return xs, zs, coeffs


def timed(fn):
    t0 = time.perf_counter()
    fn()
    return time.perf_counter() - t0


def bench(label, fn, repeats=3):
    fn()  # warm-up (JIT on the numba path)
    best = min(timed(fn) for _ in range(repeats))
    print(f"{label:34s} {best * 1e3:9.2f} ms")
    return best


def run_suite():
    from bosoniq import _accel

    rng = np.random.default_rng(2024)
    print(f"kernel path: {'numba' if _accel.USING_NUMBA else 'numpy fallback'}")
    results = {}

    xa, za, ca = make_terms(rng, 1500, 3)
    xb, zb, cb = make_terms(rng, 1500, 3)
    results["pair_products 1500x1500 (3 words)"] = bench(
        "pair_products 1500x1500 (3 words)",
        lambda: _accel.pair_products(xa, za, ca, xb, zb, cb),
    )

    # sparse-ish strings group better; mask most bits off
    xs, zs, _ = make_terms(rng, 20000, 2)
    mask = rng.integers(0, 2**63, size=(20000, 2), dtype=np.int64).astype(np.uint64)
    xs &= mask & np.uint64(0xFF000000FF)
    zs &= mask & np.uint64(0xFF000000FF)
    results["first_fit_groups 20k strings"] = bench(
        "first_fit_groups 20k strings", lambda: _accel.first_fit_groups(xs, zs)
    )

    xst, zst, cst = make_terms(rng, 4000, 1)
    codes = rng.integers(0, 2**32, size=4096, dtype=np.int64).astype(np.uint64)
    results["apply_to_codes 4000x4096"] = bench(
        "apply_to_codes 4000x4096",
        lambda: _accel.apply_to_codes(xst[:, 0].copy(), zst[:, 0].copy(), cst, codes),
    )
    return results


def main():
    if os.environ.get("_BOSONIQ_BENCH_CHILD") or os.environ.get("BOSONIQ_NO_NUMBA"):
        run_suite()
        return
    print("=== accelerated path ===")
    run_suite()
    print()
    print("=== fallback path (BOSONIQ_NO_NUMBA=1) ===")
    env = dict(os.environ, BOSONIQ_NO_NUMBA="1", _BOSONIQ_BENCH_CHILD="1")
    subprocess.run([sys.executable, __file__], env=env, check=True)


if __name__ == "__main__":
    main()
