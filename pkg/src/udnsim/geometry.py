"""Spatial primitives: rectangular (optionally toroidal) regions, homogeneous
Poisson point process sampling, and nearest-neighbour queries.

Patterns are immutable after construction and downstream code refers to
points by index, in sampling order.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree


class NoCandidateError(Exception):
    """A nearest-neighbour query was left with no candidate points."""


@dataclass(frozen=True)
class Region:
    """Rectangular arena. Distances wrap around (torus) when ``wrap`` is true,
    which removes boundary effects; non-wrapped mode models bounded rooms."""

    width: float
    height: float
    wrap: bool = True

    def __post_init__(self) -> None:
        if not (self.width > 0.0 and self.height > 0.0):
            raise ValueError("region width and height must be positive")

    def area(self) -> float:
        return self.width * self.height


@dataclass(frozen=True)
class PointPattern:
    """An ordered collection of planar points, stored as an (n, 2) array."""

    points: np.ndarray

    def __post_init__(self) -> None:
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.size == 0:
            pts = pts.reshape(0, 2)
        if pts.ndim != 2 or pts.shape[1] != 2:
            raise ValueError("points must have shape (n, 2)")
        pts = np.ascontiguousarray(pts)
        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return int(self.points.shape[0])


def _uniform_pattern(count: int, region: Region, rng: np.random.Generator) -> PointPattern:
    pts = rng.random((count, 2))
    pts[:, 0] *= region.width
    pts[:, 1] *= region.height
    return PointPattern(pts)


def sample_poisson_process(
    intensity: float, region: Region, rng: np.random.Generator
) -> PointPattern:
    """Sample a homogeneous Poisson point process.

    The count is drawn first, Poisson with mean ``intensity * region.area()``,
    then positions are placed independently and uniformly over the region.
    """
    if intensity < 0.0:
        raise ValueError(f"intensity must be >= 0, got {intensity}")
    count = int(rng.poisson(intensity * region.area()))
    return _uniform_pattern(count, region, rng)


def sample_fixed_count(
    intensity: float, region: Region, rng: np.random.Generator
) -> PointPattern:
    """Uniform pattern with a deterministic count ``round(intensity * area)``,
    for small rooms where Poisson count fluctuations would dominate."""
    if intensity < 0.0:
        raise ValueError(f"intensity must be >= 0, got {intensity}")
    count = int(round(intensity * region.area()))
    return _uniform_pattern(count, region, rng)


def _axis_delta(a, b, span: float, wrap: bool):
    d = np.abs(a - b)
    if wrap:
        d = np.minimum(d, span - d)
    return d


def distance(p, q, region: Region) -> float:
    """Distance between two points: Euclidean, or the minimum-image (shortest
    wrap-around) distance on a torus."""
    p = np.asarray(p, dtype=np.float64)
    q = np.asarray(q, dtype=np.float64)
    dx = _axis_delta(p[0], q[0], region.width, region.wrap)
    dy = _axis_delta(p[1], q[1], region.height, region.wrap)
    return float(np.hypot(dx, dy))


def distances_to_points(p, points: np.ndarray, region: Region) -> np.ndarray:
    """Distances from one point to every row of ``points``."""
    p = np.asarray(p, dtype=np.float64)
    dx = _axis_delta(p[0], points[:, 0], region.width, region.wrap)
    dy = _axis_delta(p[1], points[:, 1], region.height, region.wrap)
    return np.hypot(dx, dy)


def paired_distances(a: np.ndarray, b: np.ndarray, region: Region) -> np.ndarray:
    """Row-by-row distances between two equally long point arrays."""
    dx = _axis_delta(a[:, 0], b[:, 0], region.width, region.wrap)
    dy = _axis_delta(a[:, 1], b[:, 1], region.height, region.wrap)
    return np.hypot(dx, dy)


def pairwise_distances(a: np.ndarray, b: np.ndarray, region: Region) -> np.ndarray:
    """Full (len(a), len(b)) distance matrix."""
    dx = _axis_delta(a[:, None, 0], b[None, :, 0], region.width, region.wrap)
    dy = _axis_delta(a[:, None, 1], b[None, :, 1], region.height, region.wrap)
    return np.hypot(dx, dy)


def fits_canonical_box(points: np.ndarray, region: Region) -> bool:
    """True when a periodic spatial index can hold these points (coordinates
    inside [0, width) x [0, height)); always true without wrap."""
    if not region.wrap:
        return True
    if points.size == 0:
        return True
    return bool(
        np.all(points >= 0.0)
        and np.all(points[:, 0] < region.width)
        and np.all(points[:, 1] < region.height)
    )


def spatial_index(points: np.ndarray, region: Region) -> cKDTree:
    """k-d tree over the points, periodic when the region wraps. Callers
    check :func:`fits_canonical_box` first for wrapped regions."""
    boxsize = [region.width, region.height] if region.wrap else None
    return cKDTree(points, boxsize=boxsize, balanced_tree=False, compact_nodes=False)


def nearest_neighbor(
    p, pattern: PointPattern, region: Region, exclude=None
) -> tuple[int, float]:
    """Index of the closest pattern point and its distance.

    Ties break to the lowest index. ``exclude`` removes candidate indices;
    an empty candidate set raises :class:`NoCandidateError`.
    """
    if len(pattern) == 0:
        raise NoCandidateError("pattern has no points")
    d = distances_to_points(p, pattern.points, region)
    if exclude:
        excluded = [i for i in exclude if 0 <= i < len(pattern)]
        if len(set(excluded)) >= len(pattern):
            raise NoCandidateError("all points excluded")
        d = d.copy()
        d[excluded] = np.inf
    idx = int(np.argmin(d))
    return idx, float(d[idx])
