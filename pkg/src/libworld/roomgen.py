"""Per-category room planning: size from shelf demand, wall shelves, decor.

Rooms are cuboids sharing one height. The depth (across the corridor) is
fixed at 2*shelf_depth + corridor_width; the width grows with the shelf
count. Shelves line the two long walls only; short walls stay free for
doors. Planning happens in a local frame with the long axis along +x
(walls named north/south/east/west); the layout stage rotates rooms into
world space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .catalog import Category
from .geometry import EAST, NORTH, SOUTH, WEST, Rect, point_rect_distance, subtract_intervals
from .params import GenParams


class PlanError(ValueError):
    """Planning contract violation (internal error when raised mid-pipeline)."""


@dataclass(frozen=True)
class ShelfSpec:
    rows: int
    slots_per_row: int
    unit_width_m: float
    depth_m: float

    @property
    def capacity(self) -> int:
        return self.rows * self.slots_per_row

    @classmethod
    def from_params(cls, params: GenParams) -> "ShelfSpec":
        return cls(
            rows=params.shelf_rows,
            slots_per_row=params.slots_per_row,
            unit_width_m=params.unit_width_m,
            depth_m=params.shelf_depth_m,
        )


@dataclass
class ShelfPlacement:
    wall: str
    offset_m: float
    # (book id, row, slot) triples, row-major fill order.
    assigned: list[tuple[str, int, int]] = field(default_factory=list)


@dataclass
class Door:
    wall: str
    center_offset_m: float
    width_m: float
    kind: str  # chain_entrance | chain_exit | extra
    connects: tuple[object, object]  # (room id | "world", room id)
    id: str = ""
    neighbor_category: str = ""


@dataclass
class DecorItem:
    kind: str  # exhibit_pedestal | table | chair | plant
    position: tuple[float, float]  # room-local meters (relative to rect min corner)
    rotation_deg: float = 0.0
    info_text: str = ""


# Footprints (w, h) in meters, centered on the item position.
DECOR_FOOTPRINTS = {
    "exhibit_pedestal": (1.0, 1.0),
    "table": (1.2, 0.8),
    "chair": (0.5, 0.5),
    "plant": (0.4, 0.4),
}
PEDESTAL_CLEARANCE_M = 0.8
EXHIBIT_AREA_M2 = 12.0
TABLE_PAIR_AREA_M2 = 20.0


@dataclass
class RoomPlan:
    id: int
    category: str
    rect: Rect
    height_m: float
    shelves: list[ShelfPlacement] = field(default_factory=list)
    doors: list[Door] = field(default_factory=list)
    decor: list[DecorItem] = field(default_factory=list)
    orientation: str = "E"  # travel direction the room was placed along
    book_count: int = 0

    def shelf_unit_width(self, params: GenParams) -> float:
        return params.unit_width_m

    def shelf_intervals(self, params: GenParams) -> dict[str, list[tuple[float, float]]]:
        """Occupied intervals per wall, in wall-offset coordinates."""
        out: dict[str, list[tuple[float, float]]] = {w: [] for w in (NORTH, SOUTH, EAST, WEST)}
        for sh in self.shelves:
            out[sh.wall].append((sh.offset_m, sh.offset_m + params.unit_width_m))
        for lst in out.values():
            lst.sort()
        return out

    def door_intervals(self) -> dict[str, list[tuple[float, float]]]:
        out: dict[str, list[tuple[float, float]]] = {w: [] for w in (NORTH, SOUTH, EAST, WEST)}
        for d in self.doors:
            half = d.width_m / 2.0
            out[d.wall].append((d.center_offset_m - half, d.center_offset_m + half))
        for lst in out.values():
            lst.sort()
        return out

    def free_wall_intervals(self, wall: str, params: GenParams) -> list[tuple[float, float]]:
        span = (0.0, self.rect.wall_length(wall))
        holes = self.shelf_intervals(params)[wall] + self.door_intervals()[wall]
        return subtract_intervals(span, holes)

    def shelf_footprints(self, params: GenParams) -> list[Rect]:
        """World-space boxes occupied by shelf units."""
        rect = self.rect
        depth = params.shelf_depth_m
        unit = params.unit_width_m
        boxes = []
        for sh in self.shelves:
            if sh.wall == NORTH:
                boxes.append(Rect(rect.x + sh.offset_m, rect.y1 - depth, unit, depth))
            elif sh.wall == SOUTH:
                boxes.append(Rect(rect.x + sh.offset_m, rect.y, unit, depth))
            elif sh.wall == EAST:
                boxes.append(Rect(rect.x1 - depth, rect.y + sh.offset_m, depth, unit))
            else:
                boxes.append(Rect(rect.x, rect.y + sh.offset_m, depth, unit))
        return boxes

    def decor_footprints(self) -> list[Rect]:
        rect = self.rect
        boxes = []
        for item in self.decor:
            w, h = DECOR_FOOTPRINTS[item.kind]
            cx, cy = item.position
            boxes.append(Rect(rect.x + cx - w / 2.0, rect.y + cy - h / 2.0, w, h))
        return boxes


def required_shelves(book_count: int, spec: ShelfSpec) -> int:
    """Shelf units needed for a category: ceil(book_count / capacity)."""
    if book_count < 1:
        raise PlanError(f"book_count must be >= 1, got {book_count}")
    return -(-book_count // spec.capacity)


def room_dimensions(shelf_count: int, params: GenParams) -> tuple[float, float]:
    """(width, depth): depth fixed by the corridor, width grows with shelves."""
    if shelf_count < 1:
        raise PlanError(f"shelf_count must be >= 1, got {shelf_count}")
    per_wall = -(-shelf_count // 2)
    width = max(
        params.min_room_length_m,
        per_wall * params.unit_width_m + 2.0 * params.wall_margin_m,
    )
    return (width, params.room_depth_m)


def plan_shelf_units(shelf_count: int, dims: tuple[float, float], params: GenParams) -> list[tuple[str, float]]:
    """(wall, offset) per shelf unit: alternate north, south, left to right."""
    width, _depth = dims
    per_wall = -(-shelf_count // 2)
    needed = params.wall_margin_m + per_wall * params.unit_width_m
    if needed > width + 1e-9:
        raise PlanError(
            f"{shelf_count} shelves need {needed:.3f} m of wall, room is {width:.3f} m wide"
        )
    units = []
    for i in range(shelf_count):
        wall = NORTH if i % 2 == 0 else SOUTH
        k = i // 2
        units.append((wall, params.wall_margin_m + k * params.unit_width_m))
    return units


def assign_books_to_shelves(
    placements: list[ShelfPlacement], book_ids: list[str], spec: ShelfSpec
) -> None:
    """Fill slots in shelf placement order, row-major within each shelf."""
    for i, book_id in enumerate(book_ids):
        shelf = i // spec.capacity
        within = i % spec.capacity
        row = within // spec.slots_per_row
        slot = within % spec.slots_per_row
        placements[shelf].assigned.append((book_id, row, slot))


def plan_shelves(
    category: Category, dims: tuple[float, float], spec: ShelfSpec, params: GenParams
) -> list[ShelfPlacement]:
    """Place shelf units and assign every book of the category to one slot."""
    count = required_shelves(len(category.books), spec)
    placements = [
        ShelfPlacement(wall=wall, offset_m=offset)
        for wall, offset in plan_shelf_units(count, dims, params)
    ]
    assign_books_to_shelves(placements, [b.id for b in category.books], spec)
    return placements


def _fits(
    room: RoomPlan,
    footprint: Rect,
    params: GenParams,
    placed: list[Rect],
    wall_clearance: float = 0.0,
) -> bool:
    rect = room.rect
    if (
        footprint.x < rect.x + wall_clearance - 1e-9
        or footprint.y < rect.y + wall_clearance - 1e-9
        or footprint.x1 > rect.x1 - wall_clearance + 1e-9
        or footprint.y1 > rect.y1 - wall_clearance + 1e-9
    ):
        return False
    for other in room.shelf_footprints(params) + placed:
        if footprint.overlaps_interior(other):
            return False
    # Doors are zero-depth openings; keep furniture off the wall strip in
    # front of each opening so doorways stay passable.
    for door in room.doors:
        half = door.width_m / 2.0
        p0 = rect.wall_point(door.wall, door.center_offset_m - half)
        p1 = rect.wall_point(door.wall, door.center_offset_m + half)
        if door.wall in (NORTH, SOUTH):
            sweep = Rect(p0[0], min(p0[1], p1[1]) - (0.6 if door.wall == NORTH else 0.0), p1[0] - p0[0], 0.6)
        else:
            sweep = Rect(min(p0[0], p1[0]) - (0.6 if door.wall == EAST else 0.0), p0[1], 0.6, p1[1] - p0[1])
        if footprint.overlaps_interior(sweep):
            return False
    return True


def _pedestal_ok(room: RoomPlan, footprint: Rect, params: GenParams, placed: list[Rect]) -> bool:
    # Pedestals additionally keep 0.8 m to walls, doors and other decor
    # (shelves excluded: they line the walls by construction).
    if not _fits(room, footprint, params, placed, wall_clearance=PEDESTAL_CLEARANCE_M):
        return False
    grown = Rect(
        footprint.x - PEDESTAL_CLEARANCE_M,
        footprint.y - PEDESTAL_CLEARANCE_M,
        footprint.w + 2 * PEDESTAL_CLEARANCE_M,
        footprint.h + 2 * PEDESTAL_CLEARANCE_M,
    )
    return not any(grown.overlaps_interior(other) for other in placed)


def plan_decor(room: RoomPlan, rng_seed: int, params: GenParams | None = None) -> list[DecorItem]:
    """Deterministic decor: center exhibit for rooms >= 12 m2, then
    one table+chair pair per additional full 20 m2, plants by the entrance.
    Anything that cannot be placed with full clearance is silently skipped.
    """
    if params is None:
        params = GenParams()
    rect = room.rect
    area = rect.area
    rng = random.Random(f"{rng_seed}:{room.id}:decor")
    items: list[DecorItem] = []
    placed: list[Rect] = []

    def try_place(kind: str, cx: float, cy: float, rot: float, info: str = "") -> bool:
        w, h = DECOR_FOOTPRINTS[kind]
        fp = Rect(rect.x + cx - w / 2.0, rect.y + cy - h / 2.0, w, h)
        ok = (
            _pedestal_ok(room, fp, params, placed)
            if kind == "exhibit_pedestal"
            else _fits(room, fp, params, placed)
        )
        if not ok:
            return False
        items.append(DecorItem(kind=kind, position=(cx, cy), rotation_deg=rot, info_text=info))
        placed.append(fp)
        return True

    if area < EXHIBIT_AREA_M2:
        return []

    cx, cy = rect.w / 2.0, rect.h / 2.0
    blurb = f"{room.category}: a curated exhibit from this room's {room.book_count} volumes."
    try_place("exhibit_pedestal", cx, cy, 0.0, info=blurb)

    pairs = int((area - EXHIBIT_AREA_M2) // TABLE_PAIR_AREA_M2)
    long_axis_x = rect.w >= rect.h
    for k in range(pairs):
        step = 2.4 * (k // 2 + 1)
        sign = 1.0 if k % 2 == 0 else -1.0
        if long_axis_x:
            tx, ty = cx + sign * step, cy
            chair_dx, chair_dy = 0.0, 0.75
        else:
            tx, ty = cx, cy + sign * step
            chair_dx, chair_dy = 0.75, 0.0
        rot = rng.choice([0.0, 90.0])
        if try_place("table", tx, ty, rot):
            try_place("chair", tx + chair_dx, ty + chair_dy, rng.uniform(-20.0, 20.0) % 360.0)

    # A plant beside the entrance-side wall when there is room for it.
    if area >= EXHIBIT_AREA_M2:
        if long_axis_x:
            try_place("plant", 0.7, 0.65, rng.uniform(0.0, 360.0))
        else:
            try_place("plant", 0.65, 0.7, rng.uniform(0.0, 360.0))
    return items


def spawn_point(room: RoomPlan, params: GenParams, clearance: float = 0.4) -> tuple[float, float]:
    """Teleport spawn: room center, displaced east then north in 0.1 m steps
    until the point clears walls, shelf boxes and decor footprints."""
    rect = room.rect
    obstacles = room.shelf_footprints(params) + room.decor_footprints()

    def clear(px: float, py: float) -> bool:
        if (
            px - rect.x < clearance - 1e-9
            or rect.x1 - px < clearance - 1e-9
            or py - rect.y < clearance - 1e-9
            or rect.y1 - py < clearance - 1e-9
        ):
            return False
        return all(point_rect_distance(px, py, ob) >= clearance - 1e-9 for ob in obstacles)

    cx, cy = rect.center
    max_east = int((rect.x1 - cx) / 0.1) + 1
    max_north = int((rect.y1 - cy) / 0.1) + 1
    for dy_steps in range(max_north):
        for dx_steps in range(max_east):
            px = cx + 0.1 * dx_steps
            py = cy + 0.1 * dy_steps
            if clear(px, py):
                return (px, py)
    # Degenerate rooms: fall back to the center.
    return (cx, cy)
