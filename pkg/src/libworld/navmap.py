"""Navigation graph, shortest paths, teleport targets, signboards, 2-D map."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field

from .layoutgen import Layout
from .params import GenParams
from .roomgen import spawn_point


class NavError(ValueError):
    pass


@dataclass
class NavGraph:
    nodes: list[int]
    # (room a, room b, door id, weight in meters), undirected.
    edges: list[tuple[int, int, str, float]]

    def adjacency(self) -> dict[int, list[tuple[int, float]]]:
        adj: dict[int, list[tuple[int, float]]] = {n: [] for n in self.nodes}
        for a, b, _door, w in self.edges:
            adj[a].append((b, w))
            adj[b].append((a, w))
        for lst in adj.values():
            lst.sort()
        return adj


@dataclass
class Signboard:
    room_id: int
    # (neighbor category, wall direction of the connecting door)
    entries: list[tuple[str, str]] = field(default_factory=list)


@dataclass
class MapModel:
    # (room id, (x, y, w, h), category label)
    outlines: list[tuple[int, tuple[float, float, float, float], str]]
    # (door id, (x, y) opening center)
    door_markers: list[tuple[str, tuple[float, float]]]
    # (room id, (x, y) spawn point)
    teleports: list[tuple[int, tuple[float, float]]]
    # (category, room id), sorted alphabetically
    category_index: list[tuple[str, int]]


def build_navgraph(layout: Layout) -> NavGraph:
    """One node per room, one edge per connection, weighted by center distance."""
    nodes = [r.id for r in layout.rooms]
    centers = {r.id: r.rect.center for r in layout.rooms}
    edges = []
    for c in layout.connections:
        (ax, ay), (bx, by) = centers[c.room_a], centers[c.room_b]
        weight = math.hypot(bx - ax, by - ay)
        edges.append((c.room_a, c.room_b, c.id, weight))
    return NavGraph(nodes=nodes, edges=edges)


def shortest_path(graph: NavGraph, start: int, goal: int) -> list[int]:
    """Minimum-weight path; ties broken by lexicographically smallest id
    sequence. Both endpoints must exist."""
    node_set = set(graph.nodes)
    if start not in node_set:
        raise NavError(f"unknown room id {start}")
    if goal not in node_set:
        raise NavError(f"unknown room id {goal}")
    if start == goal:
        return [start]
    adj = graph.adjacency()
    best: dict[int, tuple[float, tuple[int, ...]]] = {start: (0.0, (start,))}
    heap: list[tuple[float, tuple[int, ...]]] = [(0.0, (start,))]
    while heap:
        dist, path = heapq.heappop(heap)
        node = path[-1]
        if best.get(node) != (dist, path):
            continue  # superseded by a better entry
        if node == goal:
            return list(path)
        for nxt, w in adj[node]:
            cand = (dist + w, path + (nxt,))
            cur = best.get(nxt)
            if cur is None or cand < cur:
                best[nxt] = cand
                heapq.heappush(heap, cand)
    raise NavError(f"no path from {start} to {goal}")  # unreachable on valid layouts


def build_map(layout: Layout, params: GenParams | None = None) -> tuple[MapModel, list[Signboard]]:
    """Top-down map model plus per-room signboards."""
    params = params or layout.params
    outlines = []
    teleports = []
    for room in layout.rooms:
        r = room.rect
        outlines.append((room.id, (r.x, r.y, r.w, r.h), room.category))
        teleports.append((room.id, spawn_point(room, params)))
    door_markers = [(c.id, c.center) for c in layout.connections]
    category_index = sorted((room.category, room.id) for room in layout.rooms)
    signboards = []
    for room in layout.rooms:
        board = Signboard(room_id=room.id)
        for door in room.doors:
            board.entries.append((door.neighbor_category, door.wall))
        signboards.append(board)
    return (
        MapModel(
            outlines=outlines,
            door_markers=door_markers,
            teleports=teleports,
            category_index=category_index,
        ),
        signboards,
    )
