"""Renderable room chunks, visibility sets, and text-ergonomics sizing.

Each room becomes one SceneChunk split into structure (always rendered for
the current room and its neighbors) and interior (rendered only inside the
room). Primitives are plain dicts with deterministic ids so chunks byte-
serialize stably.
"""

from __future__ import annotations

import colorsys
import hashlib
from dataclasses import dataclass, field

from .geometry import EAST, NORTH, SOUTH, WEST, subtract_intervals
from .layoutgen import Layout
from .params import GenParams
from .roomgen import DECOR_FOOTPRINTS, RoomPlan


class SceneError(ValueError):
    pass


DOOR_HEIGHT_M = 2.1
SHELF_HEIGHT_M = 2.2
SHELF_BASE_M = 0.15
SPINE_HEIGHT_M = 0.32
SPINE_DEPTH_M = 0.22
LIGHT_AREA_M2 = 12.0
SIGN_VIEW_DISTANCE_M = 2.5
PLAQUE_VIEW_DISTANCE_M = 0.5
SPINE_VIEW_DISTANCE_M = 0.5


@dataclass(frozen=True)
class ErgonomicsConfig:
    """Reading-comfort constants applied to all generated text surfaces."""

    body_text_dmm: float = 32.0
    min_text_dmm: float = 23.0
    font_style: str = "sans-serif"
    panel_curvature_deg: float = 60.0
    content_zone_fov_deg: float = 90.0
    content_zone_yaw_deg: float = 30.0
    content_zone_pitch_up_deg: float = 20.0
    content_zone_pitch_down_deg: float = 12.0
    panel_pitch_deg: float = -10.0  # slightly downward

    def validate(self) -> None:
        if self.body_text_dmm < self.min_text_dmm:
            raise SceneError("body text must not be smaller than the minimum")
        if not 50.0 <= self.panel_curvature_deg <= 70.0:
            raise SceneError("panel curvature must stay within 50..70 degrees")


ERGONOMICS = ErgonomicsConfig()


def compute_text_height(dmm: float, viewing_distance_m: float) -> float:
    """Physical text height in meters for a size in distance-independent
    millimeters viewed at the given distance (1 dmm = 1 mm at 1 m)."""
    if dmm < 0:
        raise SceneError("dmm must be >= 0")
    if viewing_distance_m <= 0:
        raise SceneError("viewing distance must be > 0")
    return dmm / 1000.0 * viewing_distance_m


@dataclass
class SceneChunk:
    room_id: int
    structure: list[dict] = field(default_factory=list)
    interior: list[dict] = field(default_factory=list)


@dataclass
class VisibleSet:
    current: int
    structure_visible: set[int]
    interior_visible: set[int]


def primitive_id(room_id: int, role: str, index: int) -> str:
    digest = hashlib.sha1(f"{room_id}:{role}:{index}".encode("utf-8")).hexdigest()
    return f"p{digest[:12]}"


def category_color(category: str) -> str:
    """Stable saturated color per category, as #rrggbb."""
    digest = hashlib.sha1(category.encode("utf-8")).digest()
    hue = digest[0] / 255.0
    r, g, b = colorsys.hls_to_rgb(hue, 0.45, 0.65)
    return "#{:02x}{:02x}{:02x}".format(int(r * 255), int(g * 255), int(b * 255))


def _text_prim(pid: str, kind: str, dmm: float, distance: float, text: str, **extra) -> dict:
    prim = {
        "id": pid,
        "kind": kind,
        "text": text,
        "text_height_m": compute_text_height(dmm, distance),
        "view_distance_m": distance,
        "font": ERGONOMICS.font_style,
    }
    prim.update(extra)
    return prim


def _wall_primitives(room: RoomPlan, params: GenParams) -> list[dict]:
    """Wall quads split around door openings, plus lintels above doors."""
    prims = []
    rect = room.rect
    height = room.height_m
    index = 0
    doors = room.door_intervals()
    for wall in (NORTH, SOUTH, EAST, WEST):
        length = rect.wall_length(wall)
        holes = doors[wall]
        for lo, hi in subtract_intervals((0.0, length), holes):
            a = rect.wall_point(wall, lo)
            b = rect.wall_point(wall, hi)
            prims.append(
                {
                    "id": primitive_id(room.id, "wall", index),
                    "kind": "wall",
                    "wall": wall,
                    "a": [a[0], a[1]],
                    "b": [b[0], b[1]],
                    "z0": 0.0,
                    "z1": height,
                }
            )
            index += 1
        for lo, hi in holes:
            a = rect.wall_point(wall, lo)
            b = rect.wall_point(wall, hi)
            prims.append(
                {
                    "id": primitive_id(room.id, "wall", index),
                    "kind": "wall",
                    "wall": wall,
                    "a": [a[0], a[1]],
                    "b": [b[0], b[1]],
                    "z0": DOOR_HEIGHT_M,
                    "z1": height,
                }
            )
            index += 1
    return prims


def _light_primitives(room: RoomPlan) -> list[dict]:
    rect = room.rect
    count = max(1, int(rect.area // LIGHT_AREA_M2))
    cx, cy = rect.center
    prims = []
    along_x = rect.w >= rect.h
    span = (rect.w if along_x else rect.h) / (count + 1)
    start = rect.x if along_x else rect.y
    for i in range(count):
        pos = start + span * (i + 1)
        x, y = (pos, cy) if along_x else (cx, pos)
        prims.append(
            {
                "id": primitive_id(room.id, "light", i),
                "kind": "light",
                "pos": [x, y, room.height_m - 0.1],
            }
        )
    return prims


def _door_sign_primitives(room: RoomPlan) -> list[dict]:
    prims = []
    for i, door in enumerate(sorted(room.doors, key=lambda d: d.id)):
        x, y = room.rect.wall_point(door.wall, door.center_offset_m)
        prims.append(
            _text_prim(
                primitive_id(room.id, "door_sign", i),
                "door_sign",
                ERGONOMICS.body_text_dmm,
                SIGN_VIEW_DISTANCE_M,
                door.neighbor_category,
                door_id=door.id,
                wall=door.wall,
                pos=[x, y, DOOR_HEIGHT_M + 0.3],
            )
        )
    return prims


def _shelf_primitives(room: RoomPlan, params: GenParams) -> list[dict]:
    """Shelf boxes plus one spine slab per assigned book."""
    prims = []
    color = category_color(room.category)
    slot_count = params.slots_per_row
    rows = params.shelf_rows
    row_pitch = (SHELF_HEIGHT_M - SHELF_BASE_M - 0.1) / rows
    slot_w = params.unit_width_m / slot_count
    spine_w = slot_w * 0.8
    footprints = room.shelf_footprints(params)
    for s_idx, (shelf, box) in enumerate(zip(room.shelves, footprints)):
        prims.append(
            {
                "id": primitive_id(room.id, "shelf", s_idx),
                "kind": "shelf",
                "wall": shelf.wall,
                "rect": [box.x, box.y, box.w, box.h],
                "z0": 0.0,
                "z1": SHELF_HEIGHT_M,
            }
        )
    spine_index = 0
    for s_idx, (shelf, box) in enumerate(zip(room.shelves, footprints)):
        along_x = shelf.wall in (NORTH, SOUTH)
        for book_id, row, slot in shelf.assigned:
            offset = slot * slot_w + (slot_w - spine_w) / 2.0
            z0 = SHELF_BASE_M + row * row_pitch
            if along_x:
                srect = [box.x + offset, box.y + (box.h - SPINE_DEPTH_M) / 2.0, spine_w, SPINE_DEPTH_M]
            else:
                srect = [box.x + (box.w - SPINE_DEPTH_M) / 2.0, box.y + offset, SPINE_DEPTH_M, spine_w]
            prims.append(
                {
                    "id": primitive_id(room.id, "book_spine", spine_index),
                    "kind": "book_spine",
                    "book_id": book_id,
                    "shelf_index": s_idx,
                    "row": row,
                    "slot": slot,
                    "color": color,
                    "rect": srect,
                    "z0": z0,
                    "z1": z0 + SPINE_HEIGHT_M,
                }
            )
            spine_index += 1
    return prims


def _decor_primitives(room: RoomPlan) -> list[dict]:
    prims = []
    rect = room.rect
    plaque_index = 0
    for i, item in enumerate(room.decor):
        w, h = DECOR_FOOTPRINTS[item.kind]
        prims.append(
            {
                "id": primitive_id(room.id, "decor", i),
                "kind": item.kind,
                "pos": [rect.x + item.position[0], rect.y + item.position[1]],
                "rotation_deg": item.rotation_deg,
                "footprint": [w, h],
            }
        )
        if item.kind == "exhibit_pedestal":
            prims.append(
                _text_prim(
                    primitive_id(room.id, "plaque", plaque_index),
                    "exhibit_plaque",
                    ERGONOMICS.body_text_dmm,
                    PLAQUE_VIEW_DISTANCE_M,
                    item.info_text,
                    pos=[rect.x + item.position[0], rect.y + item.position[1], 1.1],
                )
            )
            plaque_index += 1
    return prims


def instantiate_room(room: RoomPlan, params: GenParams) -> SceneChunk:
    """Build one room's renderable chunk; pure function of its inputs."""
    rect = room.rect
    structure = [
        {
            "id": primitive_id(room.id, "floor", 0),
            "kind": "floor",
            "rect": [rect.x, rect.y, rect.w, rect.h],
            "z": 0.0,
        },
        {
            "id": primitive_id(room.id, "ceiling", 0),
            "kind": "ceiling",
            "rect": [rect.x, rect.y, rect.w, rect.h],
            "z": room.height_m,
        },
    ]
    structure.extend(_wall_primitives(room, params))
    structure.extend(_light_primitives(room))
    structure.extend(_door_sign_primitives(room))
    interior = _shelf_primitives(room, params) + _decor_primitives(room)
    return SceneChunk(room_id=room.id, structure=structure, interior=interior)


def visible_set(layout: Layout, current: int) -> VisibleSet:
    """Room-level culling: interiors render only inside the occupied room,
    structure renders for the room and its connected neighbors."""
    ids = {r.id for r in layout.rooms}
    if current not in ids:
        raise SceneError(f"unknown room id {current}")
    neighbors = set(layout.neighbors(current))
    return VisibleSet(
        current=current,
        structure_visible={current} | neighbors,
        interior_visible={current},
    )
