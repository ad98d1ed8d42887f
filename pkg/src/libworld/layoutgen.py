"""Spiral floor-plan generation with inward compression.

Rooms are placed one per category along a clockwise spiral (E, S, W, N with
arm lengths 1, 1, 2, 2, 3, 3, ...). Each room is rotated so its long axis
follows the travel direction, which keeps chain doors on short, shelf-free
walls; only at spiral corners does the exit door fall on a long wall, where
a door bay is reserved (widening the room when the shelf run would fill the
wall). After placement, consecutive rooms get chain doors on their shared
wall, and non-consecutive rooms that ended up wall-adjacent may get extra
doors under a per-room connection budget derived from perimeter.

All sliding is exact interval arithmetic; nothing is grid-stepped.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .catalog import Category
from .geometry import (
    EPS,
    EAST,
    NORTH,
    SOUTH,
    WEST,
    OPPOSITE_WALL,
    Rect,
    interval_intersection,
    turn_ccw,
    turn_cw,
    wall_facing,
)
from .params import GenParams
from .roomgen import (
    Door,
    RoomPlan,
    ShelfPlacement,
    ShelfSpec,
    assign_books_to_shelves,
    plan_decor,
    plan_shelf_units,
    required_shelves,
    room_dimensions,
)


class LayoutError(ValueError):
    pass


@dataclass
class PlacementCursor:
    """Spiral walk state; direction cycles E->S->W->N (clockwise)."""

    direction: str = "E"
    rooms_in_arm: int = 0
    arm_limit: int = 1
    turns: int = 0
    ccw: bool = False

    def advanced(self) -> "PlacementCursor":
        """Cursor state after placing one room in the current direction."""
        rooms = self.rooms_in_arm + 1
        if rooms < self.arm_limit:
            return replace(self, rooms_in_arm=rooms)
        direction = turn_ccw(self.direction) if self.ccw else turn_cw(self.direction)
        turns = self.turns + 1
        limit = self.arm_limit + (1 if turns % 2 == 0 else 0)
        return PlacementCursor(
            direction=direction, rooms_in_arm=0, arm_limit=limit, turns=turns, ccw=self.ccw
        )

    @property
    def just_turned(self) -> bool:
        return self.turns > 0 and self.rooms_in_arm == 0


@dataclass
class Connection:
    """One door between two rooms, in world coordinates."""

    id: str
    kind: str  # chain | extra
    room_a: int
    room_b: int
    axis: str  # "x": opening along x on a horizontal wall; "y": along y
    line: float  # shared wall coordinate (y for axis=x, x for axis=y)
    lo: float
    hi: float  # door opening interval
    overlap_lo: float
    overlap_hi: float  # full shared-wall overlap

    @property
    def center(self) -> tuple[float, float]:
        mid = (self.lo + self.hi) / 2.0
        return (mid, self.line) if self.axis == "x" else (self.line, mid)

    @property
    def overlap_length(self) -> float:
        return self.overlap_hi - self.overlap_lo


@dataclass
class Layout:
    rooms: list[RoomPlan]
    connections: list[Connection]
    bbox: tuple[float, float, float, float]
    seed: int
    params: GenParams

    def neighbors(self, room_id: int) -> list[int]:
        out = []
        for c in self.connections:
            if c.room_a == room_id:
                out.append(c.room_b)
            elif c.room_b == room_id:
                out.append(c.room_a)
        return sorted(set(out))

    def degree(self, room_id: int) -> int:
        return sum(1 for c in self.connections if room_id in (c.room_a, c.room_b))


# Local walls -> world walls per travel direction (room long axis follows travel).
_WALL_MAP = {
    "E": {NORTH: NORTH, SOUTH: SOUTH, EAST: EAST, WEST: WEST},
    "S": {NORTH: EAST, SOUTH: WEST, WEST: NORTH, EAST: SOUTH},
    "W": {NORTH: SOUTH, SOUTH: NORTH, WEST: EAST, EAST: WEST},
    "N": {NORTH: WEST, SOUTH: EAST, WEST: SOUTH, EAST: NORTH},
}


def world_extents(dims: tuple[float, float], direction: str) -> tuple[float, float]:
    w, d = dims
    return (w, d) if direction in ("E", "W") else (d, w)


def transform_wall_interval(
    direction: str, wall: str, lo: float, hi: float, dims: tuple[float, float]
) -> tuple[str, float, float]:
    """Map a local wall interval (offset coords) into the world frame."""
    w, d = dims
    world_wall = _WALL_MAP[direction][wall]
    if direction == "E":
        return world_wall, lo, hi
    if direction == "S":
        if wall in (NORTH, SOUTH):
            return world_wall, w - hi, w - lo
        return world_wall, lo, hi
    if direction == "W":
        if wall in (NORTH, SOUTH):
            return world_wall, w - hi, w - lo
        return world_wall, d - hi, d - lo
    if direction == "N":
        if wall in (NORTH, SOUTH):
            return world_wall, lo, hi
        return world_wall, d - hi, d - lo
    raise LayoutError(f"unknown direction {direction!r}")


def max_connections(room: RoomPlan) -> int:
    """Connection budget from room size: clamp(floor(perimeter/10)+1, 2, 6)."""
    return max(2, min(6, int(math.floor(room.rect.perimeter / 10.0)) + 1))


def _slide_axis(inward: str) -> tuple[str, float]:
    """(axis moved along, signed direction) for an inward slide."""
    return {"E": ("x", 1.0), "W": ("x", -1.0), "N": ("y", 1.0), "S": ("y", -1.0)}[inward]


def _axis_interval(rect: Rect, axis: str) -> tuple[float, float]:
    return (rect.x, rect.x1) if axis == "x" else (rect.y, rect.y1)


def _cross_interval(rect: Rect, axis: str) -> tuple[float, float]:
    return (rect.y, rect.y1) if axis == "x" else (rect.x, rect.x1)


def _obstacle_bound(
    candidate: Rect, obstacles: list[Rect], axis: str, sign: float
) -> tuple[float, float | None]:
    """(max slide before touching an obstacle, exact flush coordinate)."""
    a0, a1 = _axis_interval(candidate, axis)
    c0, c1 = _cross_interval(candidate, axis)
    best_t = math.inf
    best_min: float | None = None
    for ob in obstacles:
        ob_lo, ob_hi = _cross_interval(ob, axis)
        if min(c1, ob_hi) - max(c0, ob_lo) <= EPS:
            continue  # not in the swept band
        b0, b1 = _axis_interval(ob, axis)
        gap = max(0.0, (b0 - a1) if sign > 0 else (a0 - b1))
        if gap < best_t - 1e-15:
            best_t = gap
            best_min = (b0 - (a1 - a0)) if sign > 0 else b1
    return best_t, best_min


def _cap_bound(
    candidate: Rect, must_touch: Rect, axis: str, sign: float, min_overlap: float
) -> tuple[float, float]:
    """(max slide keeping overlap >= min_overlap with must_touch, exact
    coordinate where the overlap equals min_overlap)."""
    a0, a1 = _axis_interval(candidate, axis)
    m0, m1 = _axis_interval(must_touch, axis)
    if sign > 0:
        t = m1 - a0 - min_overlap
        target = m1 - min_overlap
    else:
        t = a1 - m0 - min_overlap
        target = m0 + min_overlap - (a1 - a0)
    return max(0.0, t), target


def _forward_bound(
    candidate: Rect, travel: str, axis: str, sign: float, obstacles: list[Rect]
) -> tuple[float, float | None]:
    """(max slide keeping the forward run clear, exact snap coordinate).

    The forward run is the strip ahead of the candidate's leading edge in
    the travel direction; sliding inward must not bring the candidate's
    cross band over any room in that strip."""
    a0, a1 = _axis_interval(candidate, axis)
    lead_lo, lead_hi = _cross_interval(candidate, axis)
    best_t = math.inf
    best_min: float | None = None
    for ob in obstacles:
        ob_travel = _cross_interval(ob, axis)
        ahead = (
            ob_travel[1] > lead_hi + EPS
            if travel in ("E", "N")
            else ob_travel[0] < lead_lo - EPS
        )
        if not ahead:
            continue
        b0, b1 = _axis_interval(ob, axis)
        if sign < 0:
            if a0 >= b1 - EPS:
                t = max(0.0, a0 - b1)
                new_min = b1
            elif a1 > b0 + EPS:
                return 0.0, None
            else:
                continue
        else:
            if a1 <= b0 + EPS:
                t = max(0.0, b0 - a1)
                new_min = b0 - (a1 - a0)
            elif a0 < b1 - EPS:
                return 0.0, None
            else:
                continue
        if t < best_t - 1e-15:
            best_t = t
            best_min = new_min
    return best_t, best_min


def max_inward_slide(
    candidate: Rect,
    obstacles: list[Rect],
    inward: str,
    must_touch: Rect,
    min_overlap: float,
) -> float:
    """Largest t such that candidate + t*inward overlaps no obstacle interior
    and keeps shared-wall overlap >= min_overlap with must_touch."""
    axis, sign = _slide_axis(inward)
    t_obstacle, _ = _obstacle_bound(candidate, obstacles, axis, sign)
    t_cap, _ = _cap_bound(candidate, must_touch, axis, sign, min_overlap)
    return min(t_obstacle, t_cap)


def _world_free_intervals(room: RoomPlan, wall: str, params: GenParams) -> list[tuple[float, float]]:
    """Shelf/door-free stretches of a wall in world axis coordinates."""
    base = room.rect.x if wall in (NORTH, SOUTH) else room.rect.y
    return [(base + lo, base + hi) for lo, hi in room.free_wall_intervals(wall, params)]


def _exit_segment(prev: RoomPlan, exit_wall: str, outward: str, params: GenParams) -> Rect:
    """Door-capable stretch of the previous room's exit wall, as a thin rect.

    Picks the free interval at the outward end of the wall (that is where
    the corner door bay sits and where the candidate starts).
    """
    free = [
        (lo, hi)
        for lo, hi in _world_free_intervals(prev, exit_wall, params)
        if hi - lo >= params.door_width_m - EPS
    ]
    if not free:
        raise LayoutError(
            f"room {prev.id} has no door-capable stretch on its {exit_wall} wall"
        )
    take_max_end = outward in ("E", "N")
    seg = max(free, key=lambda iv: iv[1]) if take_max_end else min(free, key=lambda iv: iv[0])
    line = prev.rect.wall_line(exit_wall)
    if exit_wall in (NORTH, SOUTH):
        return Rect(seg[0], line, seg[1] - seg[0], 0.0)
    return Rect(line, seg[0], 0.0, seg[1] - seg[0])


def place_next_room(
    placed: list[RoomPlan],
    next_dims: tuple[float, float],
    cursor: PlacementCursor,
    params: GenParams | None = None,
) -> tuple[tuple[float, float], PlacementCursor]:
    """Position the next room: wall-adjacent to the last placed room in the
    cursor direction, outward-flush, then slid toward the spiral interior.

    The first room after a turn tucks around the corner (slides to the
    overlap cap even with nothing to press against); mid-arm rooms slide
    only when an obstacle sits in their swept band.
    """
    if params is None:
        params = GenParams()
    if not placed:
        raise LayoutError("place_next_room requires at least one placed room")
    prev = placed[-1]
    d = cursor.direction
    ew, eh = world_extents(next_dims, d)
    p = prev.rect

    outward = turn_cw(d) if cursor.ccw else turn_ccw(d)
    inward = turn_ccw(d) if cursor.ccw else turn_cw(d)

    if d == "E":
        x = p.x1
        y = p.y1 - eh if outward == "N" else p.y
    elif d == "W":
        x = p.x - ew
        y = p.y if outward == "S" else p.y1 - eh
    elif d == "S":
        y = p.y - eh
        x = p.x1 - ew if outward == "E" else p.x
    else:  # N
        y = p.y1
        x = p.x if outward == "W" else p.x1 - ew

    candidate = Rect(x, y, ew, eh)
    obstacles = [r.rect for r in placed]
    exit_wall = wall_facing(d)
    segment = _exit_segment(prev, exit_wall, outward, params)

    candidate = _push_clear(candidate, obstacles, outward)
    axis, sign = _slide_axis(inward)
    a0, a1 = _axis_interval(candidate, axis)
    m0, m1 = _axis_interval(segment, axis)
    if min(a1, m1) - max(a0, m0) < params.door_width_m - EPS:
        raise LayoutError(
            f"room {len(placed)} cannot clear earlier rooms and keep its door "
            f"to room {prev.id}"
        )

    if params.compress:
        t_obstacle, at_obstacle = _obstacle_bound(candidate, obstacles, axis, sign)
        t_cap, at_cap = _cap_bound(candidate, segment, axis, sign, params.door_width_m)
        if cursor.just_turned:
            # Tuck around the corner up to flush contact or the door cap,
            # but never so deep that the new arm's forward run gets blocked
            # (a blocked run would force the arm to stretch further later).
            t_fwd, at_fwd = _forward_bound(candidate, d, axis, sign, obstacles)
            t, new_min = min(
                (t_obstacle, at_obstacle), (t_cap, at_cap), (t_fwd, at_fwd),
                key=lambda b: b[0],
            )
        else:
            # Mid-arm: slide only into flush contact; partial slides would
            # stagger the arm without compressing anything, and never over
            # a room that lies ahead in the arm's own run.
            t_fwd, _ = _forward_bound(candidate, d, axis, sign, obstacles)
            if t_obstacle <= t_cap and t_obstacle <= t_fwd:
                t, new_min = t_obstacle, at_obstacle
            else:
                t, new_min = 0.0, None
        if t > 0.0 and not math.isinf(t) and new_min is not None:
            candidate = (
                Rect(new_min, candidate.y, candidate.w, candidate.h)
                if axis == "x"
                else Rect(candidate.x, new_min, candidate.w, candidate.h)
            )

    return ((candidate.x, candidate.y), cursor.advanced())


def _push_clear(candidate: Rect, obstacles: list[Rect], outward: str) -> Rect:
    """Translate the candidate outward (exactly, edge-snapped) until it
    overlaps no obstacle interior. The caller re-checks the door overlap."""
    axis, sign = _slide_axis(outward)
    for _ in range(len(obstacles) + 1):
        blockers = [ob for ob in obstacles if candidate.overlaps_interior(ob)]
        if not blockers:
            return candidate
        if sign > 0:
            edge = max(_axis_interval(ob, axis)[1] for ob in blockers)
            new_min = edge
        else:
            edge = min(_axis_interval(ob, axis)[0] for ob in blockers)
            new_min = edge - (_axis_interval(candidate, axis)[1] - _axis_interval(candidate, axis)[0])
        candidate = (
            Rect(new_min, candidate.y, candidate.w, candidate.h)
            if axis == "x"
            else Rect(candidate.x, new_min, candidate.w, candidate.h)
        )
    if any(candidate.overlaps_interior(ob) for ob in obstacles):
        raise LayoutError("could not push candidate clear of earlier rooms")
    return candidate


def forward_run_clear(candidate: Rect, direction: str, rooms: list[RoomPlan]) -> bool:
    """True when no existing room lies ahead of the candidate in `direction`
    within its cross band. Turns commit only into clear runs, which keeps
    the spiral wrapping around everything already placed."""
    for r in rooms:
        rect = r.rect
        if direction in ("E", "W"):
            if min(candidate.y1, rect.y1) - max(candidate.y, rect.y) <= EPS:
                continue
            if direction == "E" and rect.x1 > candidate.x1 + EPS:
                return False
            if direction == "W" and rect.x < candidate.x - EPS:
                return False
        else:
            if min(candidate.x1, rect.x1) - max(candidate.x, rect.x) <= EPS:
                continue
            if direction == "N" and rect.y1 > candidate.y1 + EPS:
                return False
            if direction == "S" and rect.y < candidate.y - EPS:
                return False
    return True


def _slid_rect(
    candidate: Rect,
    obstacles: list[Rect],
    inward: str,
    segment: Rect,
    min_overlap: float,
    t: float,
    t_obstacle: float,
) -> Rect:
    """Apply a slide of t, snapping the binding coordinate exactly so flush
    contacts and overlap caps carry no accumulated float error."""
    axis, sign = _slide_axis(inward)
    a0, a1 = _axis_interval(candidate, axis)
    size = a1 - a0
    m0, m1 = _axis_interval(segment, axis)
    c0, c1 = _cross_interval(candidate, axis)

    if t == t_obstacle:
        new_min = a0 + sign * t
        for ob in obstacles:
            ob_lo, ob_hi = _cross_interval(ob, axis)
            if min(c1, ob_hi) - max(c0, ob_lo) <= EPS:
                continue
            b0, b1 = _axis_interval(ob, axis)
            gap = max(0.0, (b0 - a1) if sign > 0 else (a0 - b1))
            if gap == t:
                new_min = (b0 - size) if sign > 0 else b1
                break
    else:
        # Overlap with the segment equals min_overlap exactly.
        new_min = (m1 - min_overlap) if sign > 0 else (m0 + min_overlap - size)

    if axis == "x":
        return Rect(new_min, candidate.y, candidate.w, candidate.h)
    return Rect(candidate.x, new_min, candidate.w, candidate.h)


@dataclass
class Adjacency:
    """Shared-wall descriptor between two rooms."""

    room_a: int
    room_b: int
    wall_a: str  # wall of room_a facing room_b
    axis: str
    line: float
    lo: float
    hi: float

    @property
    def overlap(self) -> float:
        return self.hi - self.lo


def detect_adjacency(a: RoomPlan, b: RoomPlan, min_overlap: float) -> Adjacency | None:
    """Shared-wall descriptor iff a and b abut with enough overlap; symmetric."""
    if a.id == b.id:
        raise LayoutError("detect_adjacency needs two distinct rooms")
    ra, rb = a.rect, b.rect
    pairs = (
        (NORTH, ra.y1, rb.y, "x"),
        (SOUTH, ra.y, rb.y1, "x"),
        (EAST, ra.x1, rb.x, "y"),
        (WEST, ra.x, rb.x1, "y"),
    )
    for wall_a, line_a, line_b, axis in pairs:
        if abs(line_a - line_b) > EPS:
            continue
        sa = _axis_interval(ra, axis)
        sb = _axis_interval(rb, axis)
        iv = interval_intersection(sa[0], sa[1], sb[0], sb[1])
        if iv is None or iv[1] - iv[0] < min_overlap - EPS:
            continue
        return Adjacency(
            room_a=a.id, room_b=b.id, wall_a=wall_a, axis=axis, line=line_a, lo=iv[0], hi=iv[1]
        )
    return None


def _wall_offset_base(room: RoomPlan, wall: str) -> float:
    return room.rect.x if wall in (NORTH, SOUTH) else room.rect.y


def _add_door_pair(
    layout_rooms: list[RoomPlan],
    conn: Connection,
    wall_a: str,
    kind_a: str,
    kind_b: str,
) -> None:
    """Record one physical opening in both rooms' door lists."""
    room_a = layout_rooms[conn.room_a]
    room_b = layout_rooms[conn.room_b]
    wall_b = OPPOSITE_WALL[wall_a]
    center = (conn.lo + conn.hi) / 2.0
    width = round(conn.hi - conn.lo, 9)
    for room, wall, kind, other in (
        (room_a, wall_a, kind_a, room_b),
        (room_b, wall_b, kind_b, room_a),
    ):
        room.doors.append(
            Door(
                wall=wall,
                center_offset_m=center - _wall_offset_base(room, wall),
                width_m=width,
                kind=kind,
                connects=(conn.room_a, conn.room_b),
                id=conn.id,
                neighbor_category=other.category,
            )
        )


def _door_interval(
    room_a: RoomPlan,
    room_b: RoomPlan,
    overlap: tuple[float, float],
    wall_a: str,
    params: GenParams,
    centered: bool,
) -> tuple[float, float] | None:
    """Opening interval inside the overlap avoiding shelves and doors on
    both sides; None when no legal position exists."""
    width = params.door_width_m
    free_a = _world_free_intervals(room_a, wall_a, params)
    free_b = _world_free_intervals(room_b, OPPOSITE_WALL[wall_a], params)
    if centered:
        mid = (overlap[0] + overlap[1]) / 2.0
        lo, hi = mid - width / 2.0, mid + width / 2.0
        for fa in free_a:
            if fa[0] <= lo + EPS and hi <= fa[1] + EPS:
                for fb in free_b:
                    if fb[0] <= lo + EPS and hi <= fb[1] + EPS:
                        return (lo, hi)
        return None
    candidates: list[tuple[float, float]] = []
    for fa in free_a:
        for fb in free_b:
            iv = interval_intersection(
                max(fa[0], overlap[0]),
                min(fa[1], overlap[1]),
                max(fb[0], overlap[0]),
                min(fb[1], overlap[1]),
            )
            if iv and iv[1] - iv[0] >= width - EPS:
                candidates.append(iv)
    if not candidates:
        return None
    best = max(candidates, key=lambda iv: (iv[1] - iv[0], -iv[0]))
    mid = (best[0] + best[1]) / 2.0
    return (mid - width / 2.0, mid + width / 2.0)


def assign_extra_connections(layout: Layout) -> Layout:
    """Add extra doors between non-consecutive wall-adjacent rooms.

    Candidates sorted by decreasing overlap (ties: lower id pair); accepted
    while both rooms stay under max_connections and the centered opening
    avoids shelves and existing doors on both walls.
    """
    params = layout.params
    rooms = layout.rooms
    min_overlap = params.min_adjacency_overlap_m
    candidates: list[Adjacency] = []
    for i in range(len(rooms)):
        for j in range(i + 1, len(rooms)):
            if j == i + 1:
                continue  # consecutive pair: already chained
            adj = detect_adjacency(rooms[i], rooms[j], min_overlap)
            if adj is not None:
                candidates.append(adj)
    candidates.sort(key=lambda a: (-(a.overlap), a.room_a, a.room_b))

    degrees = {r.id: layout.degree(r.id) for r in rooms}
    for adj in candidates:
        ra, rb = rooms[adj.room_a], rooms[adj.room_b]
        if degrees[ra.id] >= max_connections(ra) or degrees[rb.id] >= max_connections(rb):
            continue
        opening = _door_interval(
            ra, rb, (adj.lo, adj.hi), adj.wall_a, params, centered=True
        )
        if opening is None:
            continue
        conn = Connection(
            id=f"door-x{ra.id}-{rb.id}",
            kind="extra",
            room_a=ra.id,
            room_b=rb.id,
            axis=adj.axis,
            line=adj.line,
            lo=opening[0],
            hi=opening[1],
            overlap_lo=adj.lo,
            overlap_hi=adj.hi,
        )
        layout.connections.append(conn)
        _add_door_pair(rooms, conn, adj.wall_a, "extra", "extra")
        degrees[ra.id] += 1
        degrees[rb.id] += 1
    return layout


def _chain_connection(prev: RoomPlan, room: RoomPlan, params: GenParams) -> Connection:
    adj = detect_adjacency(prev, room, params.door_width_m - EPS)
    if adj is None:
        raise LayoutError(f"rooms {prev.id} and {room.id} lost their shared wall")
    opening = _door_interval(
        prev, room, (adj.lo, adj.hi), adj.wall_a, params, centered=False
    )
    if opening is None:
        raise LayoutError(
            f"no legal chain door between rooms {prev.id} and {room.id}"
        )
    return Connection(
        id=f"door-c{prev.id}-{room.id}",
        kind="chain",
        room_a=prev.id,
        room_b=room.id,
        axis=adj.axis,
        line=adj.line,
        lo=opening[0],
        hi=opening[1],
        overlap_lo=adj.lo,
        overlap_hi=adj.hi,
    )


def _plan_local_shelves(
    size: int, params: GenParams, ccw: bool, is_corner: bool
) -> tuple[tuple[float, float], list[tuple[str, float]]]:
    """Dims (with corner door bay) and local shelf units for a category size."""
    spec = ShelfSpec.from_params(params)
    count = required_shelves(size, spec)
    width, depth = room_dimensions(count, params)
    if is_corner:
        # Exit falls on a long wall (local south for cw, north for ccw):
        # reserve a door bay at the outward tail of that wall's shelf run.
        exit_units = (count + 1) // 2 if ccw else count // 2
        run_end = params.wall_margin_m + exit_units * params.unit_width_m
        need = params.door_width_m + params.DOOR_JAMB_M
        tail = width - run_end
        if tail < need:
            width += need - tail
    units = plan_shelf_units(count, (width, depth), params)
    return (width, depth), units


def _world_room(
    room_id: int,
    category_name: str,
    size: int,
    dims: tuple[float, float],
    units: list[tuple[str, float]],
    position: tuple[float, float],
    direction: str,
    params: GenParams,
) -> RoomPlan:
    ew, eh = world_extents(dims, direction)
    rect = Rect(position[0], position[1], ew, eh)
    shelves = []
    for wall, offset in units:
        world_wall, lo, _hi = transform_wall_interval(
            direction, wall, offset, offset + params.unit_width_m, dims
        )
        shelves.append(ShelfPlacement(wall=world_wall, offset_m=lo))
    return RoomPlan(
        id=room_id,
        category=category_name,
        rect=rect,
        height_m=params.room_height_m,
        shelves=shelves,
        orientation=direction,
        book_count=size,
    )


def layout_skeleton(
    sizes: list[int], params: GenParams, seed: int = 0, category_names: list[str] | None = None
) -> Layout:
    """Rooms, doors and connections from category sizes alone (no book data).

    This is the full placement pipeline; generate_layout adds book-to-slot
    assignment and decor on top of it.
    """
    params.validate()
    if not sizes:
        raise LayoutError("empty category list")
    if any(s < 1 for s in sizes):
        raise LayoutError("every category must hold at least one book")
    names = category_names or [f"category-{i}" for i in range(len(sizes))]

    n = len(sizes)
    turn = turn_ccw if params.ccw else turn_cw

    # Dynamic spiral walk. Arm lengths follow 1, 1, 2, 2, 3, 3, ... but a
    # turn that would wedge the new room into an earlier ring is postponed:
    # the current arm extends by one room and the turn is retried next.
    rooms: list[RoomPlan] = []
    dirs: list[str] = []
    cur_dir = "E"
    rooms_in_arm = 0
    arm_limit = 1
    turns = 0
    pending_turn = False

    for i, size in enumerate(sizes):
        if i == 0:
            dims, units = _plan_local_shelves(size, params, params.ccw, is_corner=True)
            rooms.append(_world_room(0, names[0], size, dims, units, (0.0, 0.0), "E", params))
            dirs.append("E")
            continue

        new_dir = turn(cur_dir)
        next_turns = turns + 1
        next_limit = arm_limit + (1 if next_turns % 2 == 0 else 0)

        def _try(direction: str, first_of_arm: bool) -> RoomPlan:
            """One placement attempt; turns additionally require a clear
            forward run so arms never start inside the built ring."""
            # Every room reserves a turn-side door bay: blocked arms may be
            # forced to turn early at any point, so any room can end up a
            # corner. Most rooms have the bay for free (odd shelf count or
            # width clamped to the minimum); the rest widen slightly.
            dims, units = _plan_local_shelves(size, params, params.ccw, is_corner=True)
            cursor = PlacementCursor(
                direction=direction,
                rooms_in_arm=0 if first_of_arm else max(1, rooms_in_arm),
                arm_limit=next_limit if first_of_arm else arm_limit,
                turns=next_turns if first_of_arm else turns,
                ccw=params.ccw,
            )
            position, _ = place_next_room(rooms, dims, cursor, params)
            room = _world_room(i, names[i], size, dims, units, position, direction, params)
            if first_of_arm and not forward_run_clear(room.rect, direction, rooms):
                raise LayoutError(f"turn into {direction} blocked ahead of room {i}")
            return room

        due_turn = pending_turn or rooms_in_arm >= arm_limit
        placed_room: RoomPlan | None = None
        turned = False
        if due_turn:
            try:
                placed_room = _try(new_dir, True)
                turned = True
            except LayoutError:
                placed_room = None
        if placed_room is None:
            try:
                placed_room = _try(cur_dir, False)
                pending_turn = due_turn
                rooms_in_arm += 1
            except LayoutError:
                if due_turn:
                    raise
                # The arm itself is blocked: turn early.
                placed_room = _try(new_dir, True)
                turned = True
        if turned:
            cur_dir = new_dir
            rooms_in_arm = 1
            turns = next_turns
            arm_limit = next_limit
            pending_turn = False

        rooms.append(placed_room)
        dirs.append(placed_room.orientation)

    # World entrance on the wall opposite room 0's exit.
    entry_wall = OPPOSITE_WALL[wall_facing(dirs[1])] if n > 1 else WEST
    entry_len = rooms[0].rect.wall_length(entry_wall)
    rooms[0].doors.append(
        Door(
            wall=entry_wall,
            center_offset_m=entry_len / 2.0,
            width_m=params.door_width_m,
            kind="chain_entrance",
            connects=("world", 0),
            id="door-entry",
            neighbor_category="Entrance",
        )
    )

    connections: list[Connection] = []
    for i in range(1, n):
        conn = _chain_connection(rooms[i - 1], rooms[i], params)
        connections.append(conn)
        wall_a = _chain_wall(rooms[i - 1], conn)
        _add_door_pair(rooms, conn, wall_a, "chain_exit", "chain_entrance")

    xs0 = min(r.rect.x for r in rooms)
    ys0 = min(r.rect.y for r in rooms)
    xs1 = max(r.rect.x1 for r in rooms)
    ys1 = max(r.rect.y1 for r in rooms)
    layout = Layout(
        rooms=rooms,
        connections=connections,
        bbox=(xs0, ys0, xs1, ys1),
        seed=seed,
        params=params,
    )
    return assign_extra_connections(layout)


def _chain_wall(room_a: RoomPlan, conn: Connection) -> str:
    """Wall of room_a on which a connection's opening sits."""
    r = room_a.rect
    if conn.axis == "x":
        return NORTH if abs(r.y1 - conn.line) <= EPS else SOUTH
    return EAST if abs(r.x1 - conn.line) <= EPS else WEST


def generate_layout(categories: list[Category], params: GenParams, seed: int = 0) -> Layout:
    """Full layout: spiral placement, doors, book-to-slot assignment, decor."""
    if not categories:
        raise LayoutError("empty category list")
    spec = ShelfSpec.from_params(params)
    layout = layout_skeleton(
        [len(c.books) for c in categories],
        params,
        seed,
        category_names=[c.name for c in categories],
    )
    for room, cat in zip(layout.rooms, categories):
        assign_books_to_shelves(room.shelves, [b.id for b in cat.books], spec)
        room.decor = plan_decor(room, seed, params)
    # Door signage points at the final category names.
    for room in layout.rooms:
        for door in room.doors:
            if door.connects[0] == "world":
                continue
            a, b = door.connects
            other = b if a == room.id else a
            door.neighbor_category = layout.rooms[other].category
    return layout
