// Plan-view geometry shared by collision, hover and the map.

import type { DoorInfo, RoomInfo, Wall } from "./types.js";

export interface Box {
  x: number;
  y: number;
  w: number;
  h: number;
}

export function insideBox(b: Box, px: number, py: number, margin = 0): boolean {
  return (
    px >= b.x + margin && px <= b.x + b.w - margin &&
    py >= b.y + margin && py <= b.y + b.h - margin
  );
}

export interface Segment {
  x0: number;
  y0: number;
  x1: number;
  y1: number;
  // Vertical extent, so lintels above doors render but do not block.
  z0: number;
  z1: number;
}

export function roomBox(room: RoomInfo): Box {
  const [x, y, w, h] = room.rect;
  return { x, y, w, h };
}

function wallLine(room: RoomInfo, wall: Wall): { fixed: number; lo: number; hi: number } {
  const [x, y, w, h] = room.rect;
  switch (wall) {
    case "north": return { fixed: y + h, lo: x, hi: x + w };
    case "south": return { fixed: y, lo: x, hi: x + w };
    case "east": return { fixed: x + w, lo: y, hi: y + h };
    case "west": return { fixed: x, lo: y, hi: y + h };
  }
}

/** Wall segments of one room with door openings cut out. */
export function wallSegments(room: RoomInfo): Segment[] {
  const segments: Segment[] = [];
  const height = room.height_m;
  for (const wall of ["north", "south", "east", "west"] as Wall[]) {
    const { fixed, lo, hi } = wallLine(room, wall);
    const holes = room.doors
      .filter((d) => d.wall === wall)
      .map((d) => [lo + d.center_offset_m - d.width_m / 2, lo + d.center_offset_m + d.width_m / 2] as [number, number])
      .sort((a, b) => a[0] - b[0]);
    let cursor = lo;
    const horizontal = wall === "north" || wall === "south";
    const emit = (a: number, b: number, z0: number, z1: number) => {
      if (b - a <= 1e-9) return;
      segments.push(
        horizontal
          ? { x0: a, y0: fixed, x1: b, y1: fixed, z0, z1 }
          : { x0: fixed, y0: a, x1: fixed, y1: b, z0, z1 },
      );
    };
    for (const [h0, h1] of holes) {
      emit(cursor, h0, 0, height);
      emit(h0, h1, 2.1, height); // lintel above the opening
      cursor = h1;
    }
    emit(cursor, hi, 0, height);
  }
  return segments;
}

/** Door opening described as a world-space interval on its wall line. */
export function doorSpan(room: RoomInfo, door: DoorInfo): { fixed: number; lo: number; hi: number; horizontal: boolean } {
  const { fixed, lo } = wallLine(room, door.wall);
  const a = lo + door.center_offset_m - door.width_m / 2;
  return {
    fixed,
    lo: a,
    hi: a + door.width_m,
    horizontal: door.wall === "north" || door.wall === "south",
  };
}

/** Solid plan-view boxes of a room: shelves plus decor footprints. */
export function solidBoxes(room: RoomInfo, unitWidth = 1.0, shelfDepth = 0.3): Box[] {
  const [x, y, w, h] = room.rect;
  const boxes: Box[] = [];
  for (const shelf of room.shelves) {
    switch (shelf.wall) {
      case "north":
        boxes.push({ x: x + shelf.offset_m, y: y + h - shelfDepth, w: unitWidth, h: shelfDepth });
        break;
      case "south":
        boxes.push({ x: x + shelf.offset_m, y, w: unitWidth, h: shelfDepth });
        break;
      case "east":
        boxes.push({ x: x + w - shelfDepth, y: y + shelf.offset_m, w: shelfDepth, h: unitWidth });
        break;
      case "west":
        boxes.push({ x, y: y + shelf.offset_m, w: shelfDepth, h: unitWidth });
        break;
    }
  }
  const footprints: Record<string, [number, number]> = {
    exhibit_pedestal: [1.0, 1.0],
    table: [1.2, 0.8],
    chair: [0.5, 0.5],
    plant: [0.4, 0.4],
  };
  for (const item of room.decor) {
    const fp = footprints[item.kind];
    if (!fp) continue;
    boxes.push({
      x: x + item.position[0] - fp[0] / 2,
      y: y + item.position[1] - fp[1] / 2,
      w: fp[0],
      h: fp[1],
    });
  }
  return boxes;
}

/** Ray vs axis-aligned segment/box helpers for the renderer and hover. */
export interface RayHit {
  distance: number;
  x: number;
  y: number;
}

export function raySegment(
  px: number, py: number, dx: number, dy: number, seg: Segment,
): RayHit | null {
  // Segments are axis aligned: either y0 == y1 or x0 == x1.
  if (seg.y0 === seg.y1) {
    if (Math.abs(dy) < 1e-12) return null;
    const t = (seg.y0 - py) / dy;
    if (t <= 1e-9) return null;
    const hx = px + dx * t;
    const lo = Math.min(seg.x0, seg.x1);
    const hi = Math.max(seg.x0, seg.x1);
    if (hx < lo || hx > hi) return null;
    return { distance: t, x: hx, y: seg.y0 };
  }
  if (Math.abs(dx) < 1e-12) return null;
  const t = (seg.x0 - px) / dx;
  if (t <= 1e-9) return null;
  const hy = py + dy * t;
  const lo = Math.min(seg.y0, seg.y1);
  const hi = Math.max(seg.y0, seg.y1);
  if (hy < lo || hy > hi) return null;
  return { distance: t, x: seg.x0, y: hy };
}

export function rayBox(
  px: number, py: number, dx: number, dy: number, box: Box,
): (RayHit & { side: "x" | "y" }) | null {
  let tmin = -Infinity;
  let tmax = Infinity;
  let side: "x" | "y" = "x";
  if (Math.abs(dx) < 1e-12) {
    if (px < box.x || px > box.x + box.w) return null;
  } else {
    let t0 = (box.x - px) / dx;
    let t1 = (box.x + box.w - px) / dx;
    if (t0 > t1) [t0, t1] = [t1, t0];
    if (t0 > tmin) { tmin = t0; side = "x"; }
    tmax = Math.min(tmax, t1);
  }
  if (Math.abs(dy) < 1e-12) {
    if (py < box.y || py > box.y + box.h) return null;
  } else {
    let t0 = (box.y - py) / dy;
    let t1 = (box.y + box.h - py) / dy;
    if (t0 > t1) [t0, t1] = [t1, t0];
    if (t0 > tmin) { tmin = t0; side = "y"; }
    tmax = Math.min(tmax, t1);
  }
  if (tmax < tmin || tmin <= 1e-9) return null;
  return { distance: tmin, x: px + dx * tmin, y: py + dy * tmin, side };
}
