"""Axis-aligned rectangle and interval helpers shared by the generators.

All coordinates are meters in a y-up plan view: north = +y, east = +x.
Walls are named by compass direction. Offsets along a wall are measured
from the wall's canonical start: the west end for north/south walls, the
south end for east/west walls.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

EPS = 1e-6

NORTH = "north"
SOUTH = "south"
EAST = "east"
WEST = "west"
WALLS = (NORTH, SOUTH, EAST, WEST)

# Travel directions cycle clockwise E -> S -> W -> N.
DIRECTIONS = ("E", "S", "W", "N")
DIR_VECTORS = {"E": (1.0, 0.0), "S": (0.0, -1.0), "W": (-1.0, 0.0), "N": (0.0, 1.0)}
OPPOSITE_WALL = {NORTH: SOUTH, SOUTH: NORTH, EAST: WEST, WEST: EAST}


def turn_cw(direction: str) -> str:
    return DIRECTIONS[(DIRECTIONS.index(direction) + 1) % 4]


def turn_ccw(direction: str) -> str:
    return DIRECTIONS[(DIRECTIONS.index(direction) - 1) % 4]


def wall_facing(direction: str) -> str:
    """Wall of a room that faces the given travel direction."""
    return {"E": EAST, "S": SOUTH, "W": WEST, "N": NORTH}[direction]


@dataclass(frozen=True)
class Rect:
    """Axis-aligned rectangle given by min corner and extents."""

    x: float
    y: float
    w: float
    h: float

    @property
    def x1(self) -> float:
        return self.x + self.w

    @property
    def y1(self) -> float:
        return self.y + self.h

    @property
    def center(self) -> tuple[float, float]:
        return (self.x + self.w / 2.0, self.y + self.h / 2.0)

    @property
    def area(self) -> float:
        return self.w * self.h

    @property
    def perimeter(self) -> float:
        return 2.0 * (self.w + self.h)

    def translated(self, dx: float, dy: float) -> "Rect":
        return Rect(self.x + dx, self.y + dy, self.w, self.h)

    def overlaps_interior(self, other: "Rect", eps: float = EPS) -> bool:
        """True when the open interiors intersect by more than eps."""
        return (
            min(self.x1, other.x1) - max(self.x, other.x) > eps
            and min(self.y1, other.y1) - max(self.y, other.y) > eps
        )

    def contains_point(self, px: float, py: float, eps: float = 0.0) -> bool:
        return self.x - eps <= px <= self.x1 + eps and self.y - eps <= py <= self.y1 + eps

    def wall_line(self, wall: str) -> float:
        """Fixed coordinate of a wall (y for north/south, x for east/west)."""
        if wall == NORTH:
            return self.y1
        if wall == SOUTH:
            return self.y
        if wall == EAST:
            return self.x1
        if wall == WEST:
            return self.x
        raise ValueError(f"unknown wall {wall!r}")

    def wall_span(self, wall: str) -> tuple[float, float]:
        """Interval covered by a wall along its own axis."""
        if wall in (NORTH, SOUTH):
            return (self.x, self.x1)
        return (self.y, self.y1)

    def wall_length(self, wall: str) -> float:
        lo, hi = self.wall_span(wall)
        return hi - lo

    def wall_point(self, wall: str, offset: float) -> tuple[float, float]:
        """World position at `offset` along a wall from its canonical start."""
        if wall == NORTH:
            return (self.x + offset, self.y1)
        if wall == SOUTH:
            return (self.x + offset, self.y)
        if wall == EAST:
            return (self.x1, self.y + offset)
        if wall == WEST:
            return (self.x, self.y + offset)
        raise ValueError(f"unknown wall {wall!r}")


def interval_overlap(a0: float, a1: float, b0: float, b1: float) -> float:
    """Length of the intersection of [a0,a1] and [b0,b1] (<= 0 when disjoint)."""
    return min(a1, b1) - max(a0, b0)


def interval_intersection(a0: float, a1: float, b0: float, b1: float) -> tuple[float, float] | None:
    lo, hi = max(a0, b0), min(a1, b1)
    if hi - lo <= 0.0:
        return None
    return (lo, hi)


def subtract_intervals(
    span: tuple[float, float], holes: list[tuple[float, float]]
) -> list[tuple[float, float]]:
    """Free sub-intervals of `span` after removing `holes` (any order)."""
    free = [span]
    for h0, h1 in holes:
        nxt: list[tuple[float, float]] = []
        for f0, f1 in free:
            if h1 <= f0 + EPS or h0 >= f1 - EPS:
                nxt.append((f0, f1))
                continue
            if h0 > f0 + EPS:
                nxt.append((f0, h0))
            if h1 < f1 - EPS:
                nxt.append((h1, f1))
        free = nxt
    return free


def point_rect_distance(px: float, py: float, rect: Rect) -> float:
    """Euclidean distance from a point to a rectangle (0 inside)."""
    dx = max(rect.x - px, 0.0, px - rect.x1)
    dy = max(rect.y - py, 0.0, py - rect.y1)
    return math.hypot(dx, dy)
