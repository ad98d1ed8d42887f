// Canvas raycast renderer: vertical-slice walls with door holes, shelf
// boxes with per-slot spine stripes, decor billboards, and the HUD.

import { rayBox, raySegment, wallSegments, type Box, type Segment } from "./geometry.js";
import type { Primitive, RoomInfo } from "./types.js";
import type { PlayerState } from "./player.js";

export const FOV_DEG = 90; // headset-like horizontal field of view
const EYE_HEIGHT = 1.6;
const WALL_COLOR = [202, 196, 182];
const LINTEL_COLOR = [176, 170, 156];
const SHELF_COLOR = [94, 66, 40];
const FLOOR_COLOR = "#6b6258";

interface SpineStripe {
  box: Box;
  z0: number;
  z1: number;
  color: string;
  bookId: string;
}

export interface RenderScene {
  segments: Segment[];
  shelves: { box: Box; z0: number; z1: number }[];
  spines: SpineStripe[];
  decor: { box: Box; z1: number; kind: string }[];
  signs: { x: number; y: number; z: number; text: string }[];
}

/** Flatten loaded primitives into renderable shapes. */
export function buildScene(
  rooms: RoomInfo[],
  interiors: Map<number, Primitive[]>,
): RenderScene {
  const scene: RenderScene = { segments: [], shelves: [], spines: [], decor: [], signs: [] };
  for (const room of rooms) {
    scene.segments.push(...wallSegments(room));
  }
  for (const [roomId, prims] of interiors) {
    void roomId;
    for (const prim of prims) {
      if (prim.kind === "shelf") {
        const [x, y, w, h] = prim.rect as [number, number, number, number];
        scene.shelves.push({ box: { x, y, w, h }, z0: prim.z0 as number, z1: prim.z1 as number });
      } else if (prim.kind === "book_spine") {
        const [x, y, w, h] = prim.rect as [number, number, number, number];
        scene.spines.push({
          box: { x, y, w, h },
          z0: prim.z0 as number,
          z1: prim.z1 as number,
          color: prim.color as string,
          bookId: prim.book_id as string,
        });
      } else if (["exhibit_pedestal", "table", "chair", "plant"].includes(prim.kind)) {
        const [px, py] = prim.pos as [number, number];
        const [fw, fh] = prim.footprint as [number, number];
        const heights: Record<string, number> = {
          exhibit_pedestal: 1.1,
          table: 0.75,
          chair: 0.9,
          plant: 1.2,
        };
        scene.decor.push({
          box: { x: px - fw / 2, y: py - fh / 2, w: fw, h: fh },
          z1: heights[prim.kind] ?? 1.0,
          kind: prim.kind,
        });
      }
    }
  }
  return scene;
}

function shade(base: number[], distance: number, factor = 1): string {
  const dim = Math.max(0.25, Math.min(1, 3.2 / (distance + 1))) * factor;
  return `rgb(${(base[0] * dim) | 0},${(base[1] * dim) | 0},${(base[2] * dim) | 0})`;
}

interface ColumnHit {
  distance: number;
  z0: number;
  z1: number;
  color: string;
}

export function renderFrame(
  ctx: CanvasRenderingContext2D,
  width: number,
  height: number,
  player: PlayerState,
  scene: RenderScene,
  pitchDeg: number,
): void {
  const horizon = height / 2 + (pitchDeg / 45) * (height / 2);
  ctx.fillStyle = "#2a2d33";
  ctx.fillRect(0, 0, width, horizon);
  ctx.fillStyle = FLOOR_COLOR;
  ctx.fillRect(0, horizon, width, height - horizon);

  const fovRad = (FOV_DEG * Math.PI) / 180;
  const planeDist = width / 2 / Math.tan(fovRad / 2);
  const headingRad = (player.headingDeg * Math.PI) / 180;

  for (let column = 0; column < width; column += 2) {
    const offset = Math.atan((column - width / 2) / planeDist);
    const angle = headingRad - offset;
    const dx = Math.cos(angle);
    const dy = Math.sin(angle);
    const correction = Math.cos(offset); // fisheye correction

    const hits: ColumnHit[] = [];
    for (const seg of scene.segments) {
      const hit = raySegment(player.x, player.y, dx, dy, seg);
      if (hit) {
        hits.push({
          distance: hit.distance * correction,
          z0: seg.z0,
          z1: seg.z1,
          color: shade(seg.z0 > 0 ? LINTEL_COLOR : WALL_COLOR, hit.distance),
        });
      }
    }
    for (const shelf of scene.shelves) {
      const hit = rayBox(player.x, player.y, dx, dy, shelf.box);
      if (hit) {
        hits.push({
          distance: hit.distance * correction,
          z0: shelf.z0,
          z1: shelf.z1,
          color: shade(SHELF_COLOR, hit.distance),
        });
      }
    }
    for (const spine of scene.spines) {
      const hit = rayBox(player.x, player.y, dx, dy, spine.box);
      if (hit && hit.distance < 8) {
        hits.push({
          distance: hit.distance * correction - 1e-4,
          z0: spine.z0,
          z1: spine.z1,
          color: spine.color,
        });
      }
    }
    for (const item of scene.decor) {
      const hit = rayBox(player.x, player.y, dx, dy, item.box);
      if (hit) {
        hits.push({
          distance: hit.distance * correction,
          z0: 0,
          z1: item.z1,
          color: shade([120, 104, 86], hit.distance),
        });
      }
    }

    hits.sort((a, b) => b.distance - a.distance); // far to near
    for (const hit of hits) {
      const scale = planeDist / Math.max(hit.distance, 0.05);
      const topPx = horizon - (hit.z1 - EYE_HEIGHT) * scale;
      const bottomPx = horizon - (hit.z0 - EYE_HEIGHT) * scale;
      ctx.fillStyle = hit.color;
      ctx.fillRect(column, topPx, 2, Math.max(1, bottomPx - topPx));
    }
  }

  // Crosshair.
  ctx.strokeStyle = "rgba(255,255,255,0.8)";
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(width / 2 - 6, height / 2);
  ctx.lineTo(width / 2 + 6, height / 2);
  ctx.moveTo(width / 2, height / 2 - 6);
  ctx.lineTo(width / 2, height / 2 + 6);
  ctx.stroke();
}
