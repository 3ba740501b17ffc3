"""Bulk evaluation kernels: numba-jitted hot loops with a pure-numpy fallback.

The scalar modules stay exact and object-based; these kernels evaluate the
same formulas over arrays of probes using plain integer arithmetic (the
B-function reduces to sign tests on doubled integers, so nothing here is
approximate except the float geometry shared with the scalar path).

Backend selection, via the LAYERSET_KERNEL_BACKEND environment variable:

    auto   (default) use numba when importable, else numpy
    numba  require numba, fail at import if missing
    numpy  force the pure-numpy path

Every kernel exists in both flavors and the pair is tested for exact
agreement; `impl(name, backend)` fetches a specific flavor regardless of
the active default (used by the backend-comparison benchmark).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    HAS_NUMBA = False

_requested = os.environ.get("LAYERSET_KERNEL_BACKEND", "auto").strip().lower() or "auto"
if _requested not in ("auto", "numba", "numpy"):
    raise RuntimeError(
        f"LAYERSET_KERNEL_BACKEND must be auto, numba or numpy, got {_requested!r}"
    )
if _requested == "numba" and not HAS_NUMBA:
    raise RuntimeError("LAYERSET_KERNEL_BACKEND=numba but numba is not importable")

ACTIVE_BACKEND = "numba" if (_requested == "numba" or (_requested == "auto" and HAS_NUMBA)) else "numpy"


# ---------------------------------------------------------------------------
# pure-numpy implementations

def _divisor_counts_numpy(limit: int) -> np.ndarray:
    """counts[x] = number of j in [2, x//2] dividing x; 0 for x < 2."""
    counts = np.zeros(limit + 1, dtype=np.int64)
    for x in range(4, limit + 1):
        divisors = np.arange(2, x // 2 + 1, dtype=np.int64)
        counts[x] = int(np.count_nonzero(x % divisors == 0))
    return counts


def _whitney_union_batch_numpy(bits: np.ndarray):
    """Alternating sum over all nonempty subset masks of the member rows.

    bits is an (n, p) 0/1 matrix of member values at p probes.  Returns the
    p union values and the number of terms enumerated per probe.  Each
    mask's product is recomputed from the member rows; nothing is shared
    between masks.
    """
    n, p = bits.shape
    out = np.zeros(p, dtype=np.int64)
    terms = 0
    for mask in range(1, 1 << n):
        prod = np.ones(p, dtype=np.int64)
        for j in range(n):
            if mask >> j & 1:
                prod = prod * bits[j]
        terms += 1
        if mask.bit_count() % 2 == 1:
            out += prod
        else:
            out -= prod
    return out, terms


def _bform_union_batch_numpy(bits: np.ndarray) -> np.ndarray:
    """Union via b(n+1-2k, n) on the member-count field; n reads per probe."""
    n, _ = bits.shape
    k = bits.astype(np.int64).sum(axis=0)
    x2 = 2 * (n + 1 - 2 * k)
    y2 = 2 * n
    return (np.sign(x2 + y2) - np.sign(x2 - y2)) // 2


def _disk_mask_grid_numpy(cx, cy, r2, closed, x_min, y_min, dx, dy, width, height):
    xs = x_min + (np.arange(width, dtype=np.float64) + 0.5) * dx
    ys = y_min + (np.arange(height, dtype=np.float64) + 0.5) * dy
    ddx = xs - cx
    ddy = ys - cy
    t = ddx[None, :] * ddx[None, :] + ddy[:, None] * ddy[:, None]
    mask = (t <= r2) if closed else (t < r2)
    return mask.astype(np.uint8)


def _disk_count_grid_numpy(cxs, cys, r2s, closed, x_min, y_min, dx, dy, width, height):
    out = np.zeros((height, width), dtype=np.int32)
    for d in range(cxs.shape[0]):
        out += _disk_mask_grid_numpy(cxs[d], cys[d], r2s[d], bool(closed[d]),
                                     x_min, y_min, dx, dy, width, height)
    return out


_NUMPY_IMPLS = {
    "divisor_counts": _divisor_counts_numpy,
    "whitney_union_batch": _whitney_union_batch_numpy,
    "bform_union_batch": _bform_union_batch_numpy,
    "disk_mask_grid": _disk_mask_grid_numpy,
    "disk_count_grid": _disk_count_grid_numpy,
}


# ---------------------------------------------------------------------------
# numba implementations (same arithmetic, scalar loops)

_NUMBA_IMPLS = {}

if HAS_NUMBA:

    @njit(cache=True)
    def _divisor_counts_numba(limit):
        counts = np.zeros(limit + 1, dtype=np.int64)
        for x in range(4, limit + 1):
            c = 0
            for j in range(2, x // 2 + 1):
                if x % j == 0:
                    c += 1
            counts[x] = c
        return counts

    @njit(cache=True)
    def _whitney_union_batch_numba(bits):
        n, p = bits.shape
        out = np.zeros(p, dtype=np.int64)
        terms = 0
        for mask in range(1, 1 << n):
            k = 0
            mm = mask
            while mm:
                mm &= mm - 1
                k += 1
            sgn = 1 if k % 2 == 1 else -1
            terms += 1
            for col in range(p):
                prod = 1
                for j in range(n):
                    if mask >> j & 1:
                        prod *= bits[j, col]
                out[col] += sgn * prod
        return out, terms

    @njit(cache=True)
    def _bform_union_batch_numba(bits):
        n, p = bits.shape
        out = np.empty(p, dtype=np.int64)
        y2 = 2 * n
        for col in range(p):
            k = 0
            for j in range(n):
                k += bits[j, col]
            x2 = 2 * (n + 1 - 2 * k)
            a = x2 + y2
            d = x2 - y2
            s1 = 1 if a > 0 else (-1 if a < 0 else 0)
            s2 = 1 if d > 0 else (-1 if d < 0 else 0)
            out[col] = (s1 - s2) // 2
        return out

    @njit(cache=True)
    def _disk_mask_grid_numba(cx, cy, r2, closed, x_min, y_min, dx, dy, width, height):
        out = np.empty((height, width), dtype=np.uint8)
        for j in range(height):
            y = y_min + (j + 0.5) * dy
            ddy = y - cy
            for i in range(width):
                x = x_min + (i + 0.5) * dx
                ddx = x - cx
                t = ddx * ddx + ddy * ddy
                if closed:
                    out[j, i] = 1 if t <= r2 else 0
                else:
                    out[j, i] = 1 if t < r2 else 0
        return out

    @njit(cache=True)
    def _disk_count_grid_numba(cxs, cys, r2s, closed, x_min, y_min, dx, dy, width, height):
        out = np.zeros((height, width), dtype=np.int32)
        for j in range(height):
            y = y_min + (j + 0.5) * dy
            for i in range(width):
                x = x_min + (i + 0.5) * dx
                s = 0
                for d in range(cxs.shape[0]):
                    ddx = x - cxs[d]
                    ddy = y - cys[d]
                    t = ddx * ddx + ddy * ddy
                    if closed[d]:
                        if t <= r2s[d]:
                            s += 1
                    else:
                        if t < r2s[d]:
                            s += 1
                out[j, i] = s
        return out

    _NUMBA_IMPLS = {
        "divisor_counts": _divisor_counts_numba,
        "whitney_union_batch": _whitney_union_batch_numba,
        "bform_union_batch": _bform_union_batch_numba,
        "disk_mask_grid": _disk_mask_grid_numba,
        "disk_count_grid": _disk_count_grid_numba,
    }


def available_backends():
    return ("numpy", "numba") if HAS_NUMBA else ("numpy",)


def impl(name: str, backend: str | None = None):
    """Fetch a kernel by name from a specific backend (default: active)."""
    backend = backend or ACTIVE_BACKEND
    table = _NUMPY_IMPLS if backend == "numpy" else _NUMBA_IMPLS
    if name not in _NUMPY_IMPLS:
        raise KeyError(f"unknown kernel {name!r}")
    if backend == "numba" and not HAS_NUMBA:
        raise RuntimeError("numba backend requested but numba is not importable")
    return table[name]


# ---------------------------------------------------------------------------
# public dispatching wrappers (argument normalization happens here, once)

def divisor_counts(limit: int, backend: str | None = None) -> np.ndarray:
    if limit < 0:
        raise ValueError("limit must be non-negative")
    return impl("divisor_counts", backend)(limit)


def whitney_union_batch(bits: np.ndarray, backend: str | None = None):
    bits = np.ascontiguousarray(bits, dtype=np.uint8)
    values, terms = impl("whitney_union_batch", backend)(bits)
    return values, int(terms)


def bform_union_batch(bits: np.ndarray, backend: str | None = None) -> np.ndarray:
    bits = np.ascontiguousarray(bits, dtype=np.uint8)
    return impl("bform_union_batch", backend)(bits)


def disk_mask_grid(cx, cy, r2, closed, x_min, y_min, dx, dy, width, height,
                   backend: str | None = None) -> np.ndarray:
    return impl("disk_mask_grid", backend)(
        float(cx), float(cy), float(r2), bool(closed),
        float(x_min), float(y_min), float(dx), float(dy), int(width), int(height))


def disk_count_grid(cxs, cys, r2s, closed, x_min, y_min, dx, dy, width, height,
                    backend: str | None = None) -> np.ndarray:
    cxs = np.asarray(cxs, dtype=np.float64)
    cys = np.asarray(cys, dtype=np.float64)
    r2s = np.asarray(r2s, dtype=np.float64)
    closed = np.asarray(closed, dtype=np.bool_)
    return impl("disk_count_grid", backend)(
        cxs, cys, r2s, closed,
        float(x_min), float(y_min), float(dx), float(dy), int(width), int(height))
