// Hover, grab and teleport interactions.

import { rayBox, type Box } from "./geometry.js";
import type { BookMeta, MapPayload, Primitive } from "./types.js";
import type { PlayerState } from "./player.js";

/** Exactly the four metadata fields the tooltip shows. */
export interface Tooltip {
  title: string;
  author: string;
  year: number;
  category: string;
}

export function tooltipFor(book: BookMeta): Tooltip {
  return {
    title: book.title,
    author: book.author,
    year: book.year,
    category: book.category,
  };
}

export interface SpineHit {
  bookId: string;
  distance: number;
}

/**
 * Book under the center-screen ray: nearest spine whose plan-view slab the
 * ray crosses within reach, with the eye-height band matching its row.
 */
export function hoverSpine(
  px: number,
  py: number,
  dirX: number,
  dirY: number,
  pitchDeg: number,
  eyeHeight: number,
  interior: Primitive[],
  reach = 3.0,
): SpineHit | null {
  let best: SpineHit | null = null;
  for (const prim of interior) {
    if (prim.kind !== "book_spine") continue;
    const [x, y, w, h] = prim.rect as [number, number, number, number];
    const box: Box = { x, y, w, h };
    const hit = rayBox(px, py, dirX, dirY, box);
    if (!hit || hit.distance > reach) continue;
    const zAt = eyeHeight + Math.tan((pitchDeg * Math.PI) / 180) * hit.distance;
    const z0 = prim.z0 as number;
    const z1 = prim.z1 as number;
    if (zAt < z0 - 0.05 || zAt > z1 + 0.05) continue;
    if (!best || hit.distance < best.distance) {
      best = { bookId: prim.book_id as string, distance: hit.distance };
    }
  }
  return best;
}

export function grab(state: PlayerState, hovered: SpineHit | null): PlayerState {
  if (state.heldBookId) return { ...state, heldBookId: null }; // put back
  if (!hovered) return state;
  return { ...state, heldBookId: hovered.bookId };
}

/** Teleport: land on the chosen room's spawn point, facing east. */
export function teleport(
  state: PlayerState,
  map: MapPayload,
  roomId: number,
): PlayerState {
  const target = map.teleports.find((t) => t.room_id === roomId);
  if (!target) return state;
  return {
    ...state,
    x: target.pos[0],
    y: target.pos[1],
    roomId,
    heldBookId: state.heldBookId,
  };
}


export interface ExhibitHit {
  primId: string;
  infoText: string;
  distance: number;
}

/** Exhibit pedestal (with its plaque text) under the center ray. */
export function hoverExhibit(
  px: number,
  py: number,
  dirX: number,
  dirY: number,
  interior: Primitive[],
  reach = 2.5,
): ExhibitHit | null {
  const plaques = new Map<string, string>();
  for (const prim of interior) {
    if (prim.kind === "exhibit_plaque") {
      const [x, y] = prim.pos as [number, number, number];
      plaques.set(`${x}:${y}`, prim.text as string);
    }
  }
  let best: ExhibitHit | null = null;
  for (const prim of interior) {
    if (prim.kind !== "exhibit_pedestal") continue;
    const [cx, cy] = prim.pos as [number, number];
    const [fw, fh] = prim.footprint as [number, number];
    const box: Box = { x: cx - fw / 2, y: cy - fh / 2, w: fw, h: fh };
    const hit = rayBox(px, py, dirX, dirY, box);
    if (!hit || hit.distance > reach) continue;
    if (!best || hit.distance < best.distance) {
      best = {
        primId: prim.id,
        infoText: plaques.get(`${cx}:${cy}`) ?? "",
        distance: hit.distance,
      };
    }
  }
  return best;
}

/** Click-to-rotate state for exhibits; purely presentational. */
export function spinExhibit(spins: Map<string, number>, primId: string, stepDeg = 30): Map<string, number> {
  const next = new Map(spins);
  next.set(primId, ((next.get(primId) ?? 0) + stepDeg) % 360);
  return next;
}
