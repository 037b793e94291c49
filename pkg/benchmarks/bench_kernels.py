"""Timing comparison of the two end_dims_range backends.

Runs the same exhaustive scans with the numba kernel (when available)
and the vectorized numpy fallback, and prints a small table.  Invoke as

    python benchmarks/bench_kernels.py

The first numba call pays the jit compilation cost; it is timed
separately so the steady-state rate is visible.
"""

from __future__ import annotations

import time

import numpy as np

from quiver_ed.fforacle import kernels
from quiver_ed.quiver import kronecker_quiver, loop_quiver

# exhaustive scans, sized so the numpy path finishes in seconds; the
# 1-loop case at dimension 4 would already be 3^16 points and belongs
# to a profiler session, not a smoke benchmark
CASES = [
    ("2 arrows, (2,2), p=5", kronecker_quiver(2), (2, 2), 5),
    ("3 arrows, (2,2), p=2", kronecker_quiver(3), (2, 2), 2),
    ("2 loops, (2), p=5", loop_quiver(2), (2,), 5),
    ("1 loop, (3), p=3", loop_quiver(1), (3,), 3),
]


def run(backend: str):
    rows = []
    for label, quiver, alpha, p in CASES:
        exponent = kernels.rep_space_exponent(quiver, alpha)
        space = p ** exponent
        start = time.perf_counter()
        dims = kernels.end_dims_range(quiver, alpha, p, 0, space, backend=backend)
        elapsed = time.perf_counter() - start
        rows.append((label, space, elapsed, int(dims.sum())))
    return rows


def main():
    backends = ["numpy"]
    if kernels.HAS_NUMBA:
        backends.append("numba")
    else:
        print("numba not importable; timing the numpy path only")

    results = {}
    for backend in backends:
        if backend == "numba":
            # warm the jit cache on a tiny range first
            t0 = time.perf_counter()
            kernels.end_dims_range(CASES[0][1], CASES[0][2], CASES[0][3], 0, 1, backend="numba")
            print(f"numba compile time: {time.perf_counter() - t0:.2f}s")
        results[backend] = run(backend)

    checksums = {b: [r[3] for r in rows] for b, rows in results.items()}
    if len(backends) == 2:
        assert checksums["numpy"] == checksums["numba"], "backends disagree"

    header = f"{'case':<24}{'reps':>10}" + "".join(f"{b + ' (s)':>14}" for b in backends)
    print(header)
    print("-" * len(header))
    for i, (label, space, _, _) in enumerate(results[backends[0]]):
        cells = "".join(f"{results[b][i][2]:>14.4f}" for b in backends)
        print(f"{label:<24}{space:>10}{cells}")
    if len(backends) == 2:
        total_np = sum(r[2] for r in results["numpy"])
        total_nb = sum(r[2] for r in results["numba"])
        print(f"\ntotal: numpy {total_np:.3f}s, numba {total_nb:.3f}s "
              f"(speedup x{total_np / total_nb:.1f})")


if __name__ == "__main__":
    main()
