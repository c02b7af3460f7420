"""Singularities of complete two-dimensional fans.

A 2D cone spanned by primitive u, v is a cyclic quotient singularity of
order |det(u, v)|.  It is Gorenstein exactly when some integral functional
takes the value 1 on both generators, and then it is an A_{order-1} point.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cmp_to_key
from math import gcd
from typing import Iterable, Sequence

Ray = tuple[int, int]


class FanError(ValueError):
    pass


def _det(u: Ray, v: Ray) -> int:
    return u[0] * v[1] - u[1] * v[0]


def _half(r: Ray) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2 pi)
    x, y = r
    return 0 if y > 0 or (y == 0 and x > 0) else 1


def _angle_before(u: Ray, v: Ray) -> bool:
    """Strict comparison of the counter-clockwise angles of u and v in [0, 2 pi)."""
    hu, hv = _half(u), _half(v)
    if hu != hv:
        return hu < hv
    return _det(u, v) > 0


@dataclass(frozen=True)
class Fan2D:
    rays: tuple[Ray, ...]

    def __post_init__(self) -> None:
        rays = tuple((int(x), int(y)) for x, y in self.rays)
        object.__setattr__(self, "rays", rays)
        if len(rays) < 3:
            raise FanError("a complete fan needs at least three rays")
        for r in rays:
            if r == (0, 0) or gcd(abs(r[0]), abs(r[1])) != 1:
                raise FanError(f"ray {r} is not primitive")
        for k, u in enumerate(rays):
            v = rays[(k + 1) % len(rays)]
            if _det(u, v) <= 0:
                raise FanError(f"rays {u}, {v} are not in counter-clockwise order with an angle below pi")
        # Each step turns by less than pi; the total turn must be exactly one revolution.
        wraps = sum(1 for k, u in enumerate(rays) if not _angle_before(u, rays[(k + 1) % len(rays)]))
        if wraps != 1:
            raise FanError(f"rays wind around the origin {wraps} times; the fan is not complete")

    @classmethod
    def from_unordered(cls, rays: Iterable[Sequence[int]]) -> Fan2D:
        """Sort rays counter-clockwise by exact angle, then validate."""
        items = [(int(r[0]), int(r[1])) for r in rays]
        if len(set(items)) != len(items):
            raise FanError("repeated ray")
        keyed = sorted(items, key=cmp_to_key(lambda u, v: -1 if _angle_before(u, v) else (1 if _angle_before(v, u) else 0)))
        return cls(tuple(keyed))

    def cones(self) -> list[tuple[Ray, Ray]]:
        return [(u, self.rays[(k + 1) % len(self.rays)]) for k, u in enumerate(self.rays)]

    def transformed(self, matrix: Sequence[Sequence[int]]) -> Fan2D:
        """Image under an integral matrix of determinant +-1 (reversed if it flips orientation)."""
        (a, b), (c, d) = matrix
        if abs(a * d - b * c) != 1:
            raise FanError("matrix is not unimodular")
        rays = tuple((a * x + b * y, c * x + d * y) for x, y in self.rays)
        return Fan2D(rays if a * d - b * c == 1 else tuple(reversed(rays)))


@dataclass(frozen=True)
class ConeSingularity:
    cone: tuple[Ray, Ray]
    order: int
    gorenstein: bool
    label: str


def cone_singularity(u: Ray, v: Ray) -> ConeSingularity:
    order = abs(_det(u, v))
    # m = (p, q) with m(u) = m(v) = 1 is (v_y - u_y, u_x - v_x) / det
    gorenstein = (v[1] - u[1]) % order == 0 and (u[0] - v[0]) % order == 0
    if order == 1:
        label = "smooth"
    elif gorenstein:
        label = f"A{order - 1}"
    else:
        label = f"non-Gorenstein cyclic of order {order}"
    return ConeSingularity((u, v), order, gorenstein, label)


def classify_fan(fan: Fan2D) -> list[ConeSingularity]:
    return [cone_singularity(u, v) for u, v in fan.cones()]


def singularity_multiset(fan: Fan2D) -> list[str]:
    """Sorted ADE labels of the singular cones, e.g. ["A1", "A1", "A3"]."""
    labels = []
    for s in classify_fan(fan):
        if not s.gorenstein:
            raise FanError(f"cone {s.cone} is {s.label}")
        if s.order > 1:
            labels.append(s.label)
    return sorted(labels, key=lambda t: (t[0], int(t[1:])))


def minimal_resolution(fan: Fan2D) -> Fan2D:
    """Subdivide every Gorenstein cone through the lattice points of the segment u -> v."""
    rays: list[Ray] = []
    for s in classify_fan(fan):
        if not s.gorenstein:
            raise FanError(f"cone {s.cone} is {s.label}; only Gorenstein cones are resolved here")
        (ux, uy), (vx, vy) = s.cone
        for k in range(s.order):
            rays.append((ux + k * (vx - ux) // s.order, uy + k * (vy - uy) // s.order))
    return Fan2D(tuple(rays))


def self_intersections(fan: Fan2D) -> list[int]:
    """D_i^2 for a smooth complete fan, read off from u_{i-1} + u_{i+1} = -D_i^2 u_i."""
    out = []
    n = len(fan.rays)
    for k, u in enumerate(fan.rays):
        if abs(_det(u, fan.rays[(k + 1) % n])) != 1:
            raise FanError("fan is not smooth")
        prev, nxt = fan.rays[k - 1], fan.rays[(k + 1) % n]
        sx, sy = prev[0] + nxt[0], prev[1] + nxt[1]
        b = sx // u[0] if u[0] else sy // u[1]
        out.append(-b)
    return out
