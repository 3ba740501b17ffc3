"""Rasterize plane queries to integer grids and write PGM/CSV files.

Sampling is pixel-centered: cell (i, j) is evaluated at
(x_min + (i+0.5)*dx, y_min + (j+0.5)*dy) with j increasing along y.
Grids returned by query_grid use that orientation; the writers emit rows
top-down (largest y first) so images come out upright.  All combination
arithmetic is exact integer work; only the disk geometry itself is float,
matching the scalar evaluation path operation for operation.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .indicator import CLOSED, PLANE
from .setlang import (AtMostQuery, CountQuery, DiskExpr, ExactlyQuery,
                      ExprQuery, InterExpr, MoreThanQuery, NameExpr, NotExpr,
                      Program, SetlError, UnionExpr, TOMOGRAPHY, WHITNEY,
                      _check_backend)
from .whitney import DEFAULT_CAP, CapExceededError


@dataclass(frozen=True)
class GridSpec:
    """Rectangular sampling region with per-axis sample counts."""

    x_min: float
    y_min: float
    x_max: float
    y_max: float
    width: int
    height: int

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("grid region must satisfy x_min < x_max and y_min < y_max")
        if self.width < 1 or self.height < 1:
            raise ValueError("grid needs at least one sample per axis")

    @property
    def dx(self) -> float:
        return (self.x_max - self.x_min) / self.width

    @property
    def dy(self) -> float:
        return (self.y_max - self.y_min) / self.height

    def x_center(self, i: int) -> float:
        return self.x_min + (i + 0.5) * self.dx

    def y_center(self, j: int) -> float:
        return self.y_min + (j + 0.5) * self.dy

    def cell_of(self, x: float, y: float) -> tuple[int, int]:
        """(i, j) of the cell containing the point; clamped to the grid."""
        i = int((x - self.x_min) / self.dx)
        j = int((y - self.y_min) / self.dy)
        return min(max(i, 0), self.width - 1), min(max(j, 0), self.height - 1)


# The figure-1 region of the four-disk scene.
FIG1_GRID = GridSpec(-3.75, -3.75, 3.0, 3.0, 600, 600)


def _b_grid(x2: np.ndarray, y2) -> np.ndarray:
    """B on doubled integer arguments; call sites guarantee integral output."""
    tw = np.sign(x2 + y2) - np.sign(x2 - y2)
    if (tw & 1).any():
        raise AssertionError("B produced a half value on an integer grid")
    return tw // 2


def _resolve(expr, program: Program):
    while isinstance(expr, NameExpr):
        expr = program.binding(expr.name)
    return expr


def _disk_params(members, program: Program):
    """Center/radius arrays when every member resolves to a disk, else None."""
    resolved = [_resolve(e, program) for e in members]
    if not resolved or not all(isinstance(e, DiskExpr) for e in resolved):
        return None
    return (np.array([float(e.cx) for e in resolved]),
            np.array([float(e.cy) for e in resolved]),
            np.array([float(e.r * e.r) for e in resolved]),
            np.array([e.boundary == CLOSED for e in resolved]))


def expr_grid(expr, program: Program, grid: GridSpec, backend: str = TOMOGRAPHY,
              _cache: dict | None = None) -> np.ndarray:
    """0/1 uint8 grid of a plane set expression."""
    _check_backend(backend)
    cache = _cache if _cache is not None else {}
    if isinstance(expr, DiskExpr):
        return kernels.disk_mask_grid(
            float(expr.cx), float(expr.cy), float(expr.r * expr.r),
            expr.boundary == CLOSED,
            grid.x_min, grid.y_min, grid.dx, grid.dy, grid.width, grid.height)
    if isinstance(expr, NameExpr):
        if expr.name not in cache:
            cache[expr.name] = expr_grid(program.binding(expr.name), program, grid, backend, cache)
        return cache[expr.name]
    if isinstance(expr, InterExpr):
        out = expr_grid(expr.members[0], program, grid, backend, cache).astype(np.uint8)
        for e in expr.members[1:]:
            out = out * expr_grid(e, program, grid, backend, cache)
        return out
    if isinstance(expr, NotExpr):
        return (1 - expr_grid(expr.inner, program, grid, backend, cache)).astype(np.uint8)
    if isinstance(expr, UnionExpr):
        n = len(expr.members)
        if backend == WHITNEY:
            if n > DEFAULT_CAP:
                raise CapExceededError(f"union of {n} members exceeds the cap {DEFAULT_CAP}")
            bits = np.stack([expr_grid(e, program, grid, backend, cache).reshape(-1)
                             for e in expr.members]) if n else np.zeros((0, grid.width * grid.height), np.uint8)
            values, _ = kernels.whitney_union_batch(bits)
            return values.reshape(grid.height, grid.width).astype(np.uint8)
        k = _count_grid(expr.members, program, grid, backend, cache)
        return _b_grid(2 * (n + 1 - 2 * k), 2 * n).astype(np.uint8)
    raise SetlError("only plane expressions can be rasterized", expr.span)


def _count_grid(members, program: Program, grid: GridSpec, backend: str,
                cache: dict) -> np.ndarray:
    params = _disk_params(members, program)
    if params is not None:
        cxs, cys, r2s, closed = params
        return kernels.disk_count_grid(cxs, cys, r2s, closed,
                                       grid.x_min, grid.y_min, grid.dx, grid.dy,
                                       grid.width, grid.height).astype(np.int64)
    k = np.zeros((grid.height, grid.width), dtype=np.int64)
    for e in members:
        k += expr_grid(e, program, grid, backend, cache)
    return k


def query_grid(query, program: Program, grid: GridSpec,
               backend: str = TOMOGRAPHY) -> tuple[np.ndarray, int]:
    """Evaluate a query over the grid; returns (values, maxval).

    maxval is n for count queries and 1 for 0/1 queries, for PGM headers.
    """
    _check_backend(backend)
    if program.universe_kind != PLANE:
        raise SetlError(
            f"raster requires a plane universe; this program declares {program.universe_kind}",
            query.span)
    cache: dict = {}
    if isinstance(query, ExprQuery):
        return expr_grid(query.expr, program, grid, backend, cache).astype(np.int64), 1
    n = len(query.members)
    k = _count_grid(query.members, program, grid, backend, cache)
    if isinstance(query, CountQuery):
        return k, n
    m = query.m
    if backend == WHITNEY:
        if isinstance(query, ExactlyQuery):
            vals = (k == m)
        elif isinstance(query, AtMostQuery):
            vals = (1 <= k) & (k <= m)
        elif isinstance(query, MoreThanQuery):
            vals = (k > m)
        else:
            raise TypeError(f"not a rasterizable query: {query!r}")
        return vals.astype(np.int64), 1
    if isinstance(query, ExactlyQuery):
        vals = _b_grid(2 * (m - k), 1)
    elif isinstance(query, AtMostQuery):
        vals = _b_grid(2 * (m + 1 - 2 * k), 2 * m)
    elif isinstance(query, MoreThanQuery):
        vals = _b_grid(2 * (n + m + 1 - 2 * k), 2 * (n - m))
    else:
        raise TypeError(f"not a rasterizable query: {query!r}")
    return vals.astype(np.int64), 1


def write_pgm(path, values: np.ndarray, maxval: int, binary: bool = False) -> None:
    """Write a PGM file (P2 ASCII, or P5 binary); rows are emitted top-down."""
    maxval = max(1, int(maxval))
    if values.min() < 0 or values.max() > maxval:
        raise ValueError(f"grid values outside [0, {maxval}]")
    rows = values[::-1]
    height, width = rows.shape
    magic = "P5" if binary else "P2"
    header = f"{magic}\n{width} {height}\n{maxval}\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        if binary:
            if maxval > 255:
                raise ValueError("binary PGM here supports maxval <= 255")
            fh.write(rows.astype(np.uint8).tobytes())
        else:
            for row in rows:
                fh.write(" ".join(str(int(v)) for v in row).encode("ascii"))
                fh.write(b"\n")


def write_csv(path, values: np.ndarray) -> None:
    """Comma-separated integer cells, one grid row per line, top-down, LF."""
    rows = values[::-1]
    with open(path, "wb") as fh:
        for row in rows:
            fh.write(",".join(str(int(v)) for v in row).encode("ascii"))
            fh.write(b"\n")
