"""Numeric integration of the invariant density over polygons in the triangle.

The density (1/log 2)(1 - 4 alpha beta)^(-1/2) is smooth except where
4 alpha beta = 1, which inside the closed triangle happens only at the
single point (1/2, 1/2); there the integrand blows up like an inverse
square root of the distance to the line alpha + beta = 1, which is
integrable.  The scheme: fan-triangulate, apply a degree-5 seven-point
rule per triangle, estimate local error against the four-way midpoint
split, refine worst-first, and force extra subdivision within 1e-3 of the
singular point.  Below a minimal triangle size the local contribution is
frozen and its error bound banked; everything is deterministic for a
given (region, tol).

The matching measure on the unit square (density (1/log2)(1+xy)^-2) has a
closed form over rectangles; it is the independent second route used to
cross-check the triangle-side quadrature.
"""

from __future__ import annotations

import heapq
from fractions import Fraction
from math import log
from typing import Iterable, Sequence

import numpy as np

from .bounds import Region
from .theta import DeltaPoint

LOG2 = log(2)

# Degree-5 rule on the reference triangle: centroid + two interior orbits.
_BARY = np.array([
    [1 / 3, 1 / 3, 1 / 3],
    [0.059715871789770, 0.470142064105115, 0.470142064105115],
    [0.470142064105115, 0.059715871789770, 0.470142064105115],
    [0.470142064105115, 0.470142064105115, 0.059715871789770],
    [0.797426985353087, 0.101286507323456, 0.101286507323456],
    [0.101286507323456, 0.797426985353087, 0.101286507323456],
    [0.101286507323456, 0.101286507323456, 0.797426985353087],
])
_WEIGHTS = np.array([
    0.225,
    0.132394152788506, 0.132394152788506, 0.132394152788506,
    0.125939180544827, 0.125939180544827, 0.125939180544827,
])

_SINGULAR = np.array([0.5, 0.5])
_FORCE_RADIUS = 1e-3   # extra subdivision near the 4ab = 1 point
_FORCE_SIZE = 2e-4     # ... down to triangles of this diameter
_MIN_SIZE = 1e-7       # freeze below this diameter, bank the error
_MAX_TRIANGLES = 4_000_000


def _density(pts: np.ndarray) -> np.ndarray:
    rad = 1.0 - 4.0 * pts[..., 0] * pts[..., 1]
    rad = np.maximum(rad, 1e-300)
    return 1.0 / (LOG2 * np.sqrt(rad))


def _rule(tris: np.ndarray) -> np.ndarray:
    """Seven-point integral estimates for an (n, 3, 2) triangle array."""
    pts = np.einsum("pj,njk->npk", _BARY, tris)
    vals = _density(pts)
    d1 = tris[:, 1] - tris[:, 0]
    d2 = tris[:, 2] - tris[:, 0]
    area = 0.5 * np.abs(d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])
    return area * (vals * _WEIGHTS).sum(axis=1)


def _split(tris: np.ndarray) -> np.ndarray:
    """Four-way midpoint split: (n, 3, 2) -> (n, 4, 3, 2)."""
    p0, p1, p2 = tris[:, 0], tris[:, 1], tris[:, 2]
    m01, m12, m20 = (p0 + p1) / 2, (p1 + p2) / 2, (p2 + p0) / 2
    kids = np.stack([
        np.stack([p0, m01, m20], axis=1),
        np.stack([m01, p1, m12], axis=1),
        np.stack([m20, m12, p2], axis=1),
        np.stack([m01, m12, m20], axis=1),
    ], axis=1)
    return kids


def _diameter(tris: np.ndarray) -> np.ndarray:
    a = np.linalg.norm(tris[:, 0] - tris[:, 1], axis=1)
    b = np.linalg.norm(tris[:, 1] - tris[:, 2], axis=1)
    c = np.linalg.norm(tris[:, 2] - tris[:, 0], axis=1)
    return np.maximum(a, np.maximum(b, c))


def _near_singularity(tris: np.ndarray) -> np.ndarray:
    dists = np.linalg.norm(tris - _SINGULAR, axis=2).min(axis=1)
    return dists < _FORCE_RADIUS


def _vertices_of(region) -> list[tuple[Fraction, Fraction]]:
    if isinstance(region, Region):
        return [(v.alpha, v.beta) for v in region.vertices]
    out = []
    for v in region:
        if isinstance(v, DeltaPoint):
            out.append((Fraction(v.alpha), Fraction(v.beta)))
        else:
            a, b = v
            out.append((Fraction(a), Fraction(b)))
    return out


def mu_measure(region, tol: float = 1e-6) -> float:
    """Adaptive integral of the invariant density over a convex polygon.

    `region` is a Region or a sequence of (alpha, beta) vertices inside the
    closed triangle.  Absolute error target `tol`.  Deterministic given
    (region, tol).
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    verts = _vertices_of(region)
    if len(verts) < 3:
        return 0.0
    for a, b in verts:
        if a < 0 or b < 0 or a + b > 1:
            raise ValueError("region outside the triangle")
    pts = np.array([[float(a), float(b)] for a, b in verts])
    fan = np.stack([
        np.stack([pts[0], pts[i], pts[i + 1]]) for i in range(1, len(pts) - 1)
    ])
    # drop zero-area pieces of degenerate polygons
    d1 = fan[:, 1] - fan[:, 0]
    d2 = fan[:, 2] - fan[:, 0]
    areas = 0.5 * np.abs(d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])
    fan = fan[areas > 0]
    if len(fan) == 0:
        return 0.0

    # heap entries: (-priority, counter, triangle, fine_value, err, forced)
    heap: list = []
    state = {"counter": 0, "total": 0.0, "err_sum": 0.0, "forced": 0,
             "banked_value": 0.0, "banked_err": 0.0}

    def push_batch(tris: np.ndarray):
        coarse = _rule(tris)
        kids = _split(tris)
        fine = _rule(kids.reshape(-1, 3, 2)).reshape(-1, 4).sum(axis=1)
        errs = np.abs(coarse - fine)
        diams = _diameter(tris)
        forced = _near_singularity(tris) & (diams > _FORCE_SIZE)
        for i in range(len(tris)):
            if diams[i] < _MIN_SIZE:
                state["banked_value"] += fine[i]
                state["banked_err"] += errs[i] + abs(fine[i])
                continue
            state["total"] += fine[i]
            state["err_sum"] += errs[i]
            state["forced"] += bool(forced[i])
            priority = errs[i] + (1e9 if forced[i] else 0.0)
            heapq.heappush(
                heap,
                (-priority, state["counter"], tris[i], fine[i], errs[i], bool(forced[i])),
            )
            state["counter"] += 1

    push_batch(fan)
    while state["counter"] < _MAX_TRIANGLES and heap:
        if state["err_sum"] + state["banked_err"] <= 0.9 * tol and state["forced"] == 0:
            break
        # refine the worst triangles in one vectorized batch; skip entries
        # whose error is far below the current worst (they can wait)
        worst_priority = -heap[0][0]
        batch = []
        while heap and len(batch) < 256:
            neg, cnt, tri, fine, err, forced = heapq.heappop(heap)
            if batch and not forced and -neg < 0.25 * worst_priority:
                heapq.heappush(heap, (neg, cnt, tri, fine, err, forced))
                break
            state["total"] -= fine
            state["err_sum"] -= err
            state["forced"] -= bool(forced)
            batch.append(tri)
        push_batch(_split(np.stack(batch)).reshape(-1, 3, 2))
    return state["total"] + state["banked_value"]


def mu_measure_report(region, tol: float = 1e-6) -> tuple[float, float]:
    """Integral plus a crude max-of-runs error indicator: the difference
    between the requested-tolerance run and a 4x coarser run."""
    fine = mu_measure(region, tol)
    coarse = mu_measure(region, tol * 4)
    return fine, abs(fine - coarse) + tol


def gauss_measure_rect(x0: float, x1: float, y0: float, y1: float) -> float:
    """Exact (closed-form) natural-extension measure of a rectangle in the
    unit square: (1/log2) int int (1+xy)^(-2) dy dx."""

    def F(x: float) -> float:
        if x == 0:
            return 0.0
        return log((1 + x * y1) / (1 + x * y0))

    return (F(x1) - F(x0)) / LOG2


def gauss_measure_vertical_cell(a: int) -> float:
    """Measure of the digit cell (1/(a+1), 1/a] x [0,1] on the square:
    log((a+1)^2 / (a(a+2))) / log 2.  Independent oracle for the
    triangle-side quadrature over the corresponding Psi-image."""
    if a < 1:
        raise ValueError("digit must be >= 1")
    return log((a + 1) ** 2 / (a * (a + 2))) / LOG2
