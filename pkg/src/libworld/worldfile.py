"""WorldFile: the canonical, self-contained serialized world.

One JSON document with sorted keys, fixed 6-decimal float formatting and LF
line endings, so identical inputs produce byte-identical files on any
machine. Readers must reject unknown format versions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .layoutgen import Connection, Layout
from .navmap import MapModel, Signboard
from .params import GenParams
from .roomgen import Door, RoomPlan
from .scene import SceneChunk

FORMAT_VERSION = 1


class WorldFileError(ValueError):
    pass


@dataclass
class World:
    """In-memory world bundle, the unit of export/serve."""

    seed: int
    params: GenParams
    chars_per_page: int
    layout: Layout
    map_model: MapModel
    signboards: list[Signboard]
    chunks: list[SceneChunk]
    pagination_index: dict[str, int]
    # book id -> metadata dict (title, author, year, category, text_uri,
    # text_length, room_id)
    catalog_meta: dict[str, dict]
    source_name: str = ""


def _canon(value, out: list[str]) -> None:
    if value is None:
        out.append("null")
    elif value is True:
        out.append("true")
    elif value is False:
        out.append("false")
    elif isinstance(value, str):
        out.append(json.dumps(value, ensure_ascii=False))
    elif isinstance(value, int):
        out.append(str(value))
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise WorldFileError(f"non-finite float in world data: {value}")
        out.append(f"{value + 0.0:.6f}" if value != 0 else "0.000000")
    elif isinstance(value, (list, tuple)):
        out.append("[")
        for i, item in enumerate(value):
            if i:
                out.append(",")
            _canon(item, out)
        out.append("]")
    elif isinstance(value, dict):
        out.append("{")
        for i, key in enumerate(sorted(value)):
            if not isinstance(key, str):
                raise WorldFileError(f"non-string key {key!r}")
            if i:
                out.append(",")
            out.append(json.dumps(key, ensure_ascii=False))
            out.append(":")
            _canon(value[key], out)
        out.append("}")
    else:
        raise WorldFileError(f"unserializable value of type {type(value).__name__}")


def canonical_json(data: dict) -> bytes:
    out: list[str] = []
    _canon(data, out)
    return ("".join(out) + "\n").encode("utf-8")


def _door_dict(door: Door) -> dict:
    return {
        "id": door.id,
        "wall": door.wall,
        "center_offset_m": float(door.center_offset_m),
        "width_m": float(door.width_m),
        "kind": door.kind,
        "connects": list(door.connects),
        "neighbor_category": door.neighbor_category,
    }


def _room_dict(room: RoomPlan) -> dict:
    return {
        "id": room.id,
        "category": room.category,
        "rect": [room.rect.x, room.rect.y, room.rect.w, room.rect.h],
        "height_m": float(room.height_m),
        "orientation": room.orientation,
        "book_count": room.book_count,
        "shelves": [
            {
                "wall": s.wall,
                "offset_m": float(s.offset_m),
                "assigned": [[b, r, sl] for b, r, sl in s.assigned],
            }
            for s in room.shelves
        ],
        "doors": [_door_dict(d) for d in room.doors],
        "decor": [
            {
                "kind": d.kind,
                "position": [float(d.position[0]), float(d.position[1])],
                "rotation_deg": float(d.rotation_deg),
                "info_text": d.info_text,
            }
            for d in room.decor
        ],
    }


def _connection_dict(c: Connection) -> dict:
    return {
        "id": c.id,
        "kind": c.kind,
        "room_a": c.room_a,
        "room_b": c.room_b,
        "axis": c.axis,
        "line": float(c.line),
        "lo": float(c.lo),
        "hi": float(c.hi),
        "overlap_lo": float(c.overlap_lo),
        "overlap_hi": float(c.overlap_hi),
    }


def world_to_dict(world: World) -> dict:
    layout = world.layout
    params = world.params.to_dict()
    params["chars_per_page"] = world.chars_per_page
    return {
        "format_version": FORMAT_VERSION,
        "seed": world.seed,
        "params": params,
        "layout": {
            "rooms": [_room_dict(r) for r in layout.rooms],
            "connections": [_connection_dict(c) for c in layout.connections],
            "bbox": [float(v) for v in layout.bbox],
        },
        "map": {
            "rooms": [
                {"id": rid, "rect": list(rect), "category": cat}
                for rid, rect, cat in world.map_model.outlines
            ],
            "doors": [
                {"id": did, "pos": [p[0], p[1]]} for did, p in world.map_model.door_markers
            ],
            "teleports": [
                {"room_id": rid, "pos": [p[0], p[1]]} for rid, p in world.map_model.teleports
            ],
            "category_index": [[cat, rid] for cat, rid in world.map_model.category_index],
        },
        "signboards": [
            {"room_id": sb.room_id, "entries": [[cat, wall] for cat, wall in sb.entries]}
            for sb in world.signboards
        ],
        "chunks": [
            {"room_id": ch.room_id, "structure": ch.structure, "interior": ch.interior}
            for ch in world.chunks
        ],
        "pagination_index": dict(world.pagination_index),
        "catalog": {
            "source_name": world.source_name,
            "books": [world.catalog_meta[bid] for bid in sorted(world.catalog_meta)],
        },
    }


def _validate_references(data: dict) -> None:
    """Every id referenced anywhere must resolve within the file."""
    book_ids = {b["id"] for b in data["catalog"]["books"]}
    room_ids = {r["id"] for r in data["layout"]["rooms"]}
    door_ids = {d["id"] for r in data["layout"]["rooms"] for d in r["doors"]}

    for room in data["layout"]["rooms"]:
        for shelf in room["shelves"]:
            for bid, _row, _slot in shelf["assigned"]:
                if bid not in book_ids:
                    raise WorldFileError(f"room {room['id']} shelves unknown book id {bid!r}")
        for door in room["doors"]:
            for end in door["connects"]:
                if end != "world" and end not in room_ids:
                    raise WorldFileError(f"door {door['id']} references unknown room {end!r}")
    for conn in data["layout"]["connections"]:
        for end in (conn["room_a"], conn["room_b"]):
            if end not in room_ids:
                raise WorldFileError(f"connection {conn['id']} references unknown room {end!r}")
    for entry in data["map"]["rooms"]:
        if entry["id"] not in room_ids:
            raise WorldFileError(f"map outline references unknown room {entry['id']!r}")
    for marker in data["map"]["doors"]:
        if marker["id"] not in door_ids:
            raise WorldFileError(f"map door marker references unknown door {marker['id']!r}")
    for tp in data["map"]["teleports"]:
        if tp["room_id"] not in room_ids:
            raise WorldFileError(f"teleport references unknown room {tp['room_id']!r}")
    seen_books: set[str] = set()
    for chunk in data["chunks"]:
        if chunk["room_id"] not in room_ids:
            raise WorldFileError(f"chunk references unknown room {chunk['room_id']!r}")
        for prim in chunk["interior"]:
            if prim["kind"] == "book_spine":
                bid = prim["book_id"]
                if bid not in book_ids:
                    raise WorldFileError(f"book spine references unknown book id {bid!r}")
                if bid in seen_books:
                    raise WorldFileError(f"book id {bid!r} appears on more than one spine")
                seen_books.add(bid)
    missing = book_ids - seen_books
    if missing:
        raise WorldFileError(f"book id {sorted(missing)[0]!r} has no spine primitive")
    for bid in data["pagination_index"]:
        if bid not in book_ids:
            raise WorldFileError(f"pagination index references unknown book id {bid!r}")
    for book in data["catalog"]["books"]:
        if book["room_id"] not in room_ids:
            raise WorldFileError(f"book {book['id']!r} references unknown room {book['room_id']!r}")


def export_world(world: World) -> bytes:
    """Serialize a world canonically, validating referential integrity."""
    data = world_to_dict(world)
    _validate_references(data)
    return canonical_json(data)


def parse_world(raw: bytes) -> dict:
    """Parse and validate WorldFile bytes; rejects unknown format versions."""
    try:
        data = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise WorldFileError(f"invalid world file: {exc}") from exc
    if not isinstance(data, dict):
        raise WorldFileError("invalid world file: top level must be an object")
    version = data.get("format_version")
    if version != FORMAT_VERSION:
        raise WorldFileError(
            f"unsupported format_version {version!r}; this reader supports {FORMAT_VERSION}"
        )
    _validate_references(data)
    return data
