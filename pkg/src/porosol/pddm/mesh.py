"""Fracture geometry and its tiling into constant-strength elements."""
from __future__ import annotations

from dataclasses import dataclass
from math import cos, sin, pi

import numpy as np

__all__ = [
    "GeometryError",
    "Fracture",
    "FractureSystem",
    "Element",
    "Elements",
    "discretize",
    "two_fracture_system",
]


class GeometryError(ValueError):
    pass


@dataclass(frozen=True)
class Fracture:
    center: tuple[float, float]
    half_length: float
    orientation: float  # radians, angle of the fracture line from the x axis

    def endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        c = np.asarray(self.center, dtype=float)
        t = np.array([cos(self.orientation), sin(self.orientation)])
        return c - self.half_length * t, c + self.half_length * t


@dataclass(frozen=True)
class FractureSystem:
    fractures: tuple[Fracture, ...]
    elements_per_fracture: int = 20

    def __post_init__(self):
        object.__setattr__(self, "fractures", tuple(self.fractures))

    @property
    def spacing_b(self) -> float:
        """Centre-to-centre distance of a two-fracture system."""
        if len(self.fractures) != 2:
            raise GeometryError("spacing is defined for two-fracture systems only")
        c0, c1 = (np.asarray(f.center) for f in self.fractures)
        return float(np.hypot(*(c1 - c0)))


@dataclass(frozen=True)
class Element:
    midpoint: tuple[float, float]
    half_size: float
    tangent: tuple[float, float]
    normal: tuple[float, float]
    fracture: int


class Elements:
    """Struct-of-arrays view of a list of elements, used by the kernels."""

    def __init__(self, elements):
        self.items = list(elements)
        self.mid = np.array([e.midpoint for e in self.items], dtype=float).reshape(-1, 2)
        self.h = np.array([e.half_size for e in self.items], dtype=float)
        self.t = np.array([e.tangent for e in self.items], dtype=float).reshape(-1, 2)
        self.n = np.array([e.normal for e in self.items], dtype=float).reshape(-1, 2)
        self.fracture = np.array([e.fracture for e in self.items], dtype=int)

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)

    def __getitem__(self, i):
        return self.items[i]


def _segments_intersect(p1, p2, q1, q2) -> bool:
    def orient(a, b, c):
        return np.sign((b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]))

    def on_segment(a, b, c):
        return (min(a[0], b[0]) - 1e-12 <= c[0] <= max(a[0], b[0]) + 1e-12
                and min(a[1], b[1]) - 1e-12 <= c[1] <= max(a[1], b[1]) + 1e-12)

    o1, o2 = orient(p1, p2, q1), orient(p1, p2, q2)
    o3, o4 = orient(q1, q2, p1), orient(q1, q2, p2)
    if o1 != o2 and o3 != o4:
        return True
    return any(o == 0 and on_segment(a, b, c) for o, a, b, c in (
        (o1, p1, p2, q1), (o2, p1, p2, q2), (o3, q1, q2, p1), (o4, q1, q2, p2)))


def discretize(system: FractureSystem) -> Elements:
    """Tile every fracture into ``elements_per_fracture`` equal elements.

    Elements are ordered fracture by fracture, from the first endpoint to the
    second.  The local frame of each element is (tangent, normal) with the
    normal obtained by rotating the tangent a quarter turn counterclockwise.
    """
    n = system.elements_per_fracture
    if n < 4:
        raise GeometryError(f"need at least 4 elements per fracture, got {n}")
    for f in system.fractures:
        if not f.half_length > 0:
            raise GeometryError(f"half-length must be positive: {f}")
    fr = system.fractures
    for i in range(len(fr)):
        for j in range(i + 1, len(fr)):
            if _segments_intersect(*fr[i].endpoints(), *fr[j].endpoints()):
                raise GeometryError(f"fractures {i} and {j} overlap or intersect")

    out = []
    for k, f in enumerate(fr):
        start, _ = f.endpoints()
        t = (cos(f.orientation), sin(f.orientation))
        nrm = (-t[1], t[0])
        h = f.half_length / n
        for j in range(n):
            s = (2 * j + 1) * h
            mid = (float(start[0] + s * t[0]), float(start[1] + s * t[1]))
            out.append(Element(mid, h, t, nrm, k))
    return Elements(out)


def two_fracture_system(a: float, b: float, elements_per_fracture: int = 20) -> FractureSystem:
    """Two parallel fractures of half-length ``a`` crossing a well on the x axis.

    The well runs along x (the minimum horizontal stress direction); the
    fractures are centred at ``x = -b/2`` and ``x = +b/2`` and extend along y.
    """
    if not b > 0:
        raise GeometryError("spacing must be positive")
    return FractureSystem(
        (Fracture((-b / 2, 0.0), a, pi / 2), Fracture((b / 2, 0.0), a, pi / 2)),
        elements_per_fracture)
