#!/usr/bin/env python3
"""Compare the numba and pure-numpy kernel backends on the hot paths.

Runs each kernel through both implementations (when numba is available),
verifies the outputs are identical, and reports best-of-N wall times.

    python benchmarks/compare_kernels.py [--repeats 5]
"""

import argparse
import time

import numpy as np

from layerset import kernels


def best_ns(fn, repeats):
    best = None
    for _ in range(repeats):
        t0 = time.perf_counter_ns()
        fn()
        dt = time.perf_counter_ns() - t0
        best = dt if best is None else min(best, dt)
    return best


def workloads():
    rng = np.random.default_rng(42)
    bits = rng.integers(0, 2, size=(16, 512)).astype(np.uint8)
    fig1 = dict(cxs=np.array([1.0, -1.0, 0.0, 0.0]),
                cys=np.array([0.0, 0.0, 1.0, -1.0]),
                r2s=np.array([2.25, 4.0, 2.25, 3.0625]),
                closed=np.array([False] * 4))
    yield ("divisor_counts(20000)",
           lambda backend: kernels.divisor_counts(20_000, backend))
    yield ("whitney_union_batch(n=16, p=512)",
           lambda backend: kernels.whitney_union_batch(bits, backend))
    yield ("bform_union_batch(n=16, p=512)",
           lambda backend: kernels.bform_union_batch(bits, backend))
    yield ("disk_count_grid(600x600, 4 disks)",
           lambda backend: kernels.disk_count_grid(
               **fig1, x_min=-3.75, y_min=-3.75, dx=6.75 / 600, dy=6.75 / 600,
               width=600, height=600, backend=backend))


def as_arrays(result):
    if isinstance(result, tuple):
        return result
    return (result,)


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    backends = kernels.available_backends()
    print(f"available backends: {', '.join(backends)} (active: {kernels.ACTIVE_BACKEND})")
    header = f"{'kernel':<36}" + "".join(f"{b + ' (ms)':>14}" for b in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)

    for name, call in workloads():
        results = {}
        times = {}
        for backend in backends:
            call(backend)  # warm-up, lets numba compile outside the timer
            times[backend] = best_ns(lambda: call(backend), args.repeats)
            results[backend] = as_arrays(call(backend))
        if len(backends) == 2:
            for a, b in zip(results["numpy"], results["numba"]):
                if not np.array_equal(np.asarray(a), np.asarray(b)):
                    print(f"MISMATCH between backends in {name}")
                    return 1
        row = f"{name:<36}" + "".join(f"{times[b] / 1e6:>14.3f}" for b in backends)
        if len(backends) == 2:
            row += f"{times['numpy'] / times['numba']:>10.1f}x"
        print(row)
    print("all backends agree exactly")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
