from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from libworld.catalog import BookRecord, Category
from libworld.geometry import EAST, NORTH, SOUTH, WEST, Rect
from libworld.layoutgen import (
    Layout,
    LayoutError,
    PlacementCursor,
    detect_adjacency,
    generate_layout,
    layout_skeleton,
    max_connections,
    max_inward_slide,
    place_next_room,
    transform_wall_interval,
    world_extents,
)
from libworld.params import GenParams
from libworld.roomgen import RoomPlan

from helpers import (
    assert_layout_valid,
    bfs_reachable,
    stepping_slide_oracle,
)

PARAMS = GenParams()
DEMO_SIZES = [120, 40, 10]


def make_room(rid: int, x: float, y: float, w: float, h: float) -> RoomPlan:
    return RoomPlan(id=rid, category=f"c{rid}", rect=Rect(x, y, w, h), height_m=3.0)


def make_category(n: int, name: str) -> Category:
    return Category(
        name=name,
        books=[BookRecord(f"{name}-{i}", f"T{i}", "A", 1900, name, "t.txt") for i in range(n)],
    )


class TestPlacementCursor:
    def test_clockwise_cycle_with_arm_growth(self):
        cursor = PlacementCursor()
        dirs = []
        for _ in range(12):
            dirs.append(cursor.direction)
            cursor = cursor.advanced()
        assert dirs == ["E", "S", "W", "W", "N", "N", "E", "E", "E", "S", "S", "S"]

    def test_never_reverses(self):
        cursor = PlacementCursor()
        prev = cursor.direction
        opposite = {"E": "W", "W": "E", "N": "S", "S": "N"}
        for _ in range(50):
            cursor = cursor.advanced()
            assert cursor.direction != opposite[prev]
            prev = cursor.direction


class TestMaxInwardSlide:
    def test_no_obstacles_capped_by_overlap(self):
        # Sliding W along a corner tail: overlap hits min_overlap at t = 2.8.
        candidate = Rect(5.0, -4.0, 3.0, 4.0)
        segment = Rect(4.0, 0.0, 4.0, 0.0)
        t = max_inward_slide(candidate, [], "W", segment, 1.2)
        assert t == pytest.approx(2.8)

    def test_flush_obstacle_blocks(self):
        candidate = Rect(5.0, 0.0, 3.0, 3.0)
        obstacle = Rect(2.0, 0.0, 3.0, 3.0)
        segment = Rect(5.0, 3.0, 3.0, 0.0)
        assert max_inward_slide(candidate, [obstacle], "W", segment, 1.2) == 0.0

    def test_gap_obstacle(self):
        candidate = Rect(5.0, 0.0, 3.0, 3.0)
        obstacle = Rect(0.0, 1.0, 2.5, 1.0)  # 2.5 m away inward
        segment = Rect(4.0, 3.0, 4.0, 0.0)  # slack overlap constraint
        t = max_inward_slide(candidate, [obstacle], "W", segment, 1.2)
        assert t == pytest.approx(2.5)
        oracle = stepping_slide_oracle(candidate, [obstacle], "W", segment, 1.2)
        assert abs(t - oracle) <= 2e-3

    @settings(max_examples=60, deadline=None)
    @given(
        cx=st.floats(min_value=-5, max_value=5),
        gap=st.floats(min_value=0.0, max_value=4.0),
        seg_len=st.floats(min_value=1.4, max_value=6.0),
        inward=st.sampled_from(["W", "S", "E", "N"]),
    )
    def test_matches_stepping_oracle(self, cx, gap, seg_len, inward):
        # Candidate with an obstacle `gap` away inward and a wall segment
        # centered on it (feasible start, as the placement loop guarantees).
        if inward in ("W", "E"):
            candidate = Rect(cx, 0.0, 3.0, 3.0)
            ob_x = cx - gap - 2.0 if inward == "W" else cx + 3.0 + gap
            obstacle = Rect(ob_x, 1.0, 2.0, 1.0)
            segment = Rect(cx + 1.5 - seg_len / 2.0, 3.0, seg_len, 0.0)
        else:
            candidate = Rect(0.0, cx, 3.0, 3.0)
            ob_y = cx - gap - 2.0 if inward == "S" else cx + 3.0 + gap
            obstacle = Rect(1.0, ob_y, 1.0, 2.0)
            segment = Rect(3.0, cx + 1.5 - seg_len / 2.0, 0.0, seg_len)
        t = max_inward_slide(candidate, [obstacle], inward, segment, 1.2)
        oracle = stepping_slide_oracle(candidate, [obstacle], inward, segment, 1.2)
        assert abs(t - oracle) <= 2e-3


class TestPlaceNextRoom:
    def test_second_room_no_slide(self):
        rooms = [make_room(0, 0.0, 0.0, 4.0, 3.0)]
        cursor = PlacementCursor()
        (x, y), nxt = place_next_room(rooms, (4.0, 3.0), cursor, PARAMS)
        assert (x, y) == (4.0, 0.0)
        assert nxt.direction == "S"

    def test_turn_tuck_flush_against_blocker(self):
        # An S-turn candidate with a room in its westward band stops flush.
        rooms = [
            make_room(0, 0.0, -4.0, 4.0, 3.0),  # blocker in the band
            make_room(1, 4.0, 0.0, 4.0, 3.0),  # the corner room
        ]
        cursor = PlacementCursor(direction="S", rooms_in_arm=0, arm_limit=1, turns=1)
        (x, y), _ = place_next_room(rooms, (4.0, 3.0), cursor, PARAMS)
        assert x == pytest.approx(4.0)  # flush against room 0's east wall
        assert y == pytest.approx(-4.0)

    def test_slide_clamped_at_exact_door_overlap(self):
        # Demo geometry: the third room's tuck stops at overlap == door width.
        layout = layout_skeleton(DEMO_SIZES, PARAMS, seed=42)
        conn = next(c for c in layout.connections if c.id == "door-c1-2")
        assert conn.overlap_length == pytest.approx(PARAMS.door_width_m)

    def test_compress_disabled_keeps_outward_flush(self):
        layout = layout_skeleton(DEMO_SIZES, GenParams(compress=False), seed=42)
        room2 = layout.rooms[2].rect
        assert (room2.x, room2.y) == (5.0, -4.0)

    def test_requires_a_placed_room(self):
        with pytest.raises(LayoutError):
            place_next_room([], (4.0, 3.0), PlacementCursor(), PARAMS)


class TestTransforms:
    @settings(max_examples=80, deadline=None)
    @given(
        direction=st.sampled_from(["E", "S", "W", "N"]),
        wall=st.sampled_from([NORTH, SOUTH, EAST, WEST]),
        lo=st.floats(min_value=0.0, max_value=3.0),
        length=st.floats(min_value=0.1, max_value=2.0),
    )
    def test_interval_transform_matches_point_transform(self, direction, wall, lo, length):
        dims = (6.0, 3.0)
        w, d = dims
        hi = min(lo + length, w if wall in (NORTH, SOUTH) else d)
        lo = min(lo, hi)

        def to_point(wall: str, offset: float) -> tuple[float, float]:
            return {
                NORTH: (offset, d),
                SOUTH: (offset, 0.0),
                EAST: (w, offset),
                WEST: (0.0, offset),
            }[wall]

        def rotate(p: tuple[float, float]) -> tuple[float, float]:
            x, y = p
            return {
                "E": (x, y),
                "S": (y, w - x),
                "W": (w - x, d - y),
                "N": (d - y, x),
            }[direction]

        new_wall, new_lo, new_hi = transform_wall_interval(direction, wall, lo, hi, dims)
        ew, eh = world_extents(dims, direction)
        p0, p1 = rotate(to_point(wall, lo)), rotate(to_point(wall, hi))
        if new_wall in (NORTH, SOUTH):
            line = eh if new_wall == NORTH else 0.0
            assert p0[1] == pytest.approx(line) and p1[1] == pytest.approx(line)
            assert sorted((p0[0], p1[0])) == pytest.approx([new_lo, new_hi])
        else:
            line = ew if new_wall == EAST else 0.0
            assert p0[0] == pytest.approx(line) and p1[0] == pytest.approx(line)
            assert sorted((p0[1], p1[1])) == pytest.approx([new_lo, new_hi])


class TestDetectAdjacency:
    def test_adjacent_with_overlap(self):
        a = make_room(0, 0.0, 0.0, 4.0, 3.0)
        b = make_room(1, 4.0, 1.0, 4.0, 3.0)  # shares x=4 line, y overlap 2.0
        adj = detect_adjacency(a, b, 1.4)
        assert adj is not None
        assert adj.wall_a == EAST
        assert adj.overlap == pytest.approx(2.0)

    def test_insufficient_overlap(self):
        a = make_room(0, 0.0, 0.0, 4.0, 3.0)
        b = make_room(1, 4.0, 2.0, 4.0, 3.0)  # only 1.0 overlap
        assert detect_adjacency(a, b, 1.4) is None

    def test_gap_not_adjacent(self):
        a = make_room(0, 0.0, 0.0, 4.0, 3.0)
        b = make_room(1, 4.2, 0.0, 4.0, 3.0)
        assert detect_adjacency(a, b, 1.4) is None

    def test_symmetric(self):
        a = make_room(0, 0.0, 0.0, 4.0, 3.0)
        b = make_room(1, 2.0, 3.0, 4.0, 3.0)
        ab = detect_adjacency(a, b, 1.4)
        ba = detect_adjacency(b, a, 1.4)
        assert ab is not None and ba is not None
        assert (ab.lo, ab.hi) == (ba.lo, ba.hi)
        assert ab.wall_a == NORTH and ba.wall_a == SOUTH


class TestMaxConnections:
    def test_small_room(self):
        assert max_connections(make_room(0, 0, 0, 4.0, 3.0)) == 2

    def test_long_room(self):
        assert max_connections(make_room(0, 0, 0, 20.0, 3.0)) == 5

    def test_clamped_at_six(self):
        assert max_connections(make_room(0, 0, 0, 97.0, 3.0)) == 6


class TestExtraConnections:
    def test_demo_cycle_created(self):
        layout = layout_skeleton(DEMO_SIZES, PARAMS, seed=42)
        extras = [c for c in layout.connections if c.kind == "extra"]
        assert len(extras) == 1
        assert (extras[0].room_a, extras[0].room_b) == (0, 2)
        # BFS oracle: removing the extra door still leaves a path, so the
        # extra creates a cycle: E - V + 1 == 1.
        assert len(layout.connections) - len(layout.rooms) + 1 == 1

    def test_budget_exhausted_skips(self):
        # Two chained minimal rooms both at budget 2 cannot take extras.
        layout = layout_skeleton([1, 1, 1, 1, 1], PARAMS, seed=0)
        for room in layout.rooms:
            assert layout.degree(room.id) <= max_connections(room)

    def test_no_candidates_no_op(self):
        layout = layout_skeleton([1, 1], PARAMS, seed=0)
        assert all(c.kind == "chain" for c in layout.connections)


class TestGenerateLayout:
    def test_single_category(self):
        layout = generate_layout([make_category(5, "solo")], PARAMS, seed=1)
        assert len(layout.rooms) == 1
        room = layout.rooms[0]
        assert (room.rect.x, room.rect.y) == (0.0, 0.0)
        assert len(room.doors) == 1
        assert room.doors[0].wall == WEST
        assert room.doors[0].connects == ("world", 0)
        assert layout.connections == []

    def test_demo_shape(self):
        cats = [make_category(n, f"cat{i}") for i, n in enumerate(DEMO_SIZES)]
        layout = generate_layout(cats, PARAMS, seed=42)
        assert len(layout.rooms) == 3
        chains = [c for c in layout.connections if c.kind == "chain"]
        assert len(chains) == 2
        assert_layout_valid(layout)
        reached = bfs_reachable(3, [(c.room_a, c.room_b) for c in layout.connections])
        assert reached == {0, 1, 2}

    def test_books_assigned_once(self):
        cats = [make_category(n, f"cat{i}") for i, n in enumerate(DEMO_SIZES)]
        layout = generate_layout(cats, PARAMS, seed=42)
        for room, cat in zip(layout.rooms, cats):
            ids = [b for s in room.shelves for b, _r, _sl in s.assigned]
            assert sorted(ids) == sorted(b.id for b in cat.books)

    def test_empty_categories_rejected(self):
        with pytest.raises(LayoutError):
            generate_layout([], PARAMS, seed=0)

    def test_deterministic(self):
        cats = [make_category(n, f"cat{i}") for i, n in enumerate(DEMO_SIZES)]
        a = generate_layout(cats, PARAMS, seed=42)
        b = generate_layout(cats, PARAMS, seed=42)
        assert a == b

    def test_world_entrance_present_in_multiroom(self):
        layout = layout_skeleton([500, 600, 700, 800], PARAMS, seed=0)
        entry = [d for d in layout.rooms[0].doors if d.connects[0] == "world"]
        assert len(entry) == 1

    def test_no_180_reversal(self):
        layout = layout_skeleton(list(range(1, 30)), PARAMS, seed=0)
        opposite = {"E": "W", "W": "E", "N": "S", "S": "N"}
        dirs = [r.orientation for r in layout.rooms]
        for a, b in zip(dirs, dirs[1:]):
            assert b != opposite[a]

    def test_chain_doors_on_different_walls(self):
        layout = layout_skeleton([700] * 12, PARAMS, seed=0)
        for room in layout.rooms:
            chain_walls = [
                d.wall for d in room.doors if d.kind in ("chain_entrance", "chain_exit")
            ]
            assert len(set(chain_walls)) == len(chain_walls)


class TestLayoutProperties:
    @settings(max_examples=120, deadline=None)
    @given(
        sizes=st.lists(st.integers(min_value=1, max_value=2000), min_size=1, max_size=50),
        ccw=st.booleans(),
    )
    def test_random_layouts_satisfy_all_invariants(self, sizes, ccw):
        layout = layout_skeleton(sizes, GenParams(ccw=ccw), seed=0)
        assert_layout_valid(layout)

    def test_compression_never_worse_on_demo(self):
        def bbox_area(layout: Layout) -> float:
            b = layout.bbox
            return (b[2] - b[0]) * (b[3] - b[1])

        for seed in range(100):
            on = layout_skeleton(DEMO_SIZES, GenParams(seed=seed), seed=seed)
            off = layout_skeleton(DEMO_SIZES, GenParams(seed=seed, compress=False), seed=seed)
            assert bbox_area(on) <= bbox_area(off) + 1e-9
