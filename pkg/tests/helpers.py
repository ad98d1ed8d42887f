"""Independent oracles used across the suite.

Everything here is deliberately naive (brute force, stepping, enumeration)
and shares no code with the implementation paths it checks.
"""

from __future__ import annotations

from collections import deque

from libworld.geometry import Rect

EPS = 1e-6


def rects_overlap_interior(a: Rect, b: Rect, eps: float = EPS) -> bool:
    """O(1) open-interval AABB check, written independently of Rect's own."""
    x_over = min(a.x + a.w, b.x + b.w) - max(a.x, b.x)
    y_over = min(a.y + a.h, b.y + b.h) - max(a.y, b.y)
    return x_over > eps and y_over > eps


def any_pair_overlaps(rects: list[Rect], eps: float = EPS) -> tuple[int, int] | None:
    """O(n^2) scan; returns the first offending pair of indices."""
    for i in range(len(rects)):
        for j in range(i + 1, len(rects)):
            if rects_overlap_interior(rects[i], rects[j], eps):
                return (i, j)
    return None


def bfs_reachable(node_count: int, edges: list[tuple[int, int]], start: int = 0) -> set[int]:
    adj: dict[int, list[int]] = {i: [] for i in range(node_count)}
    for a, b in edges:
        adj[a].append(b)
        adj[b].append(a)
    seen = {start}
    queue = deque([start])
    while queue:
        node = queue.popleft()
        for nxt in adj[node]:
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return seen


def stepping_slide_oracle(
    candidate: Rect,
    obstacles: list[Rect],
    inward: str,
    must_touch: Rect,
    min_overlap: float,
    step: float = 0.001,
    max_t: float = 50.0,
) -> float:
    """1 mm brute-force version of the inward slide bound."""
    dx, dy = {"E": (1, 0), "W": (-1, 0), "N": (0, 1), "S": (0, -1)}[inward]

    def ok(t: float) -> bool:
        moved = Rect(candidate.x + dx * t, candidate.y + dy * t, candidate.w, candidate.h)
        for ob in obstacles:
            if rects_overlap_interior(moved, ob):
                return False
        if dx != 0:
            overlap = min(moved.x + moved.w, must_touch.x + must_touch.w) - max(
                moved.x, must_touch.x
            )
        else:
            overlap = min(moved.y + moved.h, must_touch.y + must_touch.h) - max(
                moved.y, must_touch.y
            )
        return overlap >= min_overlap - 1e-9

    t = 0.0
    best = 0.0
    while t <= max_t:
        if ok(t):
            best = t
        elif not ok(t + step):
            # both this and the next step fail: the feasible prefix ended
            break
        t += step
    return best


def enumerate_paths(edges: list[tuple[int, int, float]], start: int, goal: int):
    """All simple paths with total weights (exponential; tiny graphs only)."""
    adj: dict[int, list[tuple[int, float]]] = {}
    for a, b, w in edges:
        adj.setdefault(a, []).append((b, w))
        adj.setdefault(b, []).append((a, w))
    out: list[tuple[float, list[int]]] = []

    def walk(node: int, seen: set[int], path: list[int], dist: float) -> None:
        if node == goal:
            out.append((dist, list(path)))
            return
        for nxt, w in adj.get(node, []):
            if nxt not in seen:
                seen.add(nxt)
                path.append(nxt)
                walk(nxt, seen, path, dist + w)
                path.pop()
                seen.remove(nxt)

    walk(start, {start}, [start], 0.0)
    return out


def intervals_overlap(a: tuple[float, float], b: tuple[float, float], eps: float = 1e-9) -> bool:
    return min(a[1], b[1]) - max(a[0], b[0]) > eps


def assert_layout_valid(layout) -> None:
    """Full invariant audit of a generated layout, oracle-side."""
    params = layout.params
    rooms = layout.rooms
    rects = [r.rect for r in rooms]
    bad = any_pair_overlaps(rects)
    assert bad is None, f"rooms {bad} overlap"

    edges = [(c.room_a, c.room_b) for c in layout.connections]
    reached = bfs_reachable(len(rooms), edges)
    assert reached == {r.id for r in rooms}, "layout not connected"

    from libworld.layoutgen import max_connections

    degree = {r.id: 0 for r in rooms}
    for c in layout.connections:
        degree[c.room_a] += 1
        degree[c.room_b] += 1
        assert c.overlap_hi - c.overlap_lo >= params.door_width_m - 1e-9, (
            f"connection {c.id} overlap too small"
        )
        assert c.overlap_lo - 1e-9 <= c.lo and c.hi <= c.overlap_hi + 1e-9, (
            f"door {c.id} outside its overlap"
        )
    for r in rooms:
        assert degree[r.id] <= max_connections(r), f"room {r.id} over budget"

    for r in rooms:
        shelf_iv = r.shelf_intervals(params)
        door_iv = r.door_intervals()
        for wall in shelf_iv:
            length = r.rect.wall_length(wall)
            for s in shelf_iv[wall]:
                assert s[0] >= -1e-9 and s[1] <= length + 1e-9, (
                    f"room {r.id} shelf outside {wall} wall"
                )
                for d in door_iv[wall]:
                    assert not intervals_overlap(s, d), (
                        f"room {r.id} shelf/door clash on {wall}"
                    )
            for d in door_iv[wall]:
                assert d[0] >= -1e-9 and d[1] <= length + 1e-9, (
                    f"room {r.id} door outside {wall} wall"
                )

    # Consecutive chain rooms share a wall with enough overlap.
    chains = {(c.room_a, c.room_b) for c in layout.connections if c.kind == "chain"}
    for i in range(1, len(rooms)):
        assert (i - 1, i) in chains, f"rooms {i-1},{i} not chained"
