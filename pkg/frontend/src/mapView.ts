// Map overlay model: pan/zoom transform between world meters and canvas
// pixels, plus room hit-testing for teleport clicks.

import { insideBox } from "./geometry.js";
import type { MapPayload } from "./types.js";

export interface MapView {
  centerX: number; // world meters at the canvas center
  centerY: number;
  pxPerMeter: number;
}

export function initialView(map: MapPayload, canvasW: number, canvasH: number): MapView {
  const xs = map.rooms.map((r) => r.rect[0]);
  const ys = map.rooms.map((r) => r.rect[1]);
  const xe = map.rooms.map((r) => r.rect[0] + r.rect[2]);
  const ye = map.rooms.map((r) => r.rect[1] + r.rect[3]);
  const minX = Math.min(...xs);
  const minY = Math.min(...ys);
  const maxX = Math.max(...xe);
  const maxY = Math.max(...ye);
  const spanX = Math.max(maxX - minX, 1);
  const spanY = Math.max(maxY - minY, 1);
  const scale = Math.min(canvasW / (spanX * 1.2), canvasH / (spanY * 1.2));
  return {
    centerX: (minX + maxX) / 2,
    centerY: (minY + maxY) / 2,
    pxPerMeter: scale,
  };
}

export function worldToCanvas(
  view: MapView, canvasW: number, canvasH: number, wx: number, wy: number,
): [number, number] {
  // North (+y) is up on the map, canvas y grows downward.
  return [
    canvasW / 2 + (wx - view.centerX) * view.pxPerMeter,
    canvasH / 2 - (wy - view.centerY) * view.pxPerMeter,
  ];
}

export function canvasToWorld(
  view: MapView, canvasW: number, canvasH: number, cx: number, cy: number,
): [number, number] {
  return [
    view.centerX + (cx - canvasW / 2) / view.pxPerMeter,
    view.centerY - (cy - canvasH / 2) / view.pxPerMeter,
  ];
}

export function pan(view: MapView, dxPx: number, dyPx: number): MapView {
  return {
    ...view,
    centerX: view.centerX - dxPx / view.pxPerMeter,
    centerY: view.centerY + dyPx / view.pxPerMeter,
  };
}

export function zoom(view: MapView, factor: number): MapView {
  const scale = Math.min(Math.max(view.pxPerMeter * factor, 1), 200);
  return { ...view, pxPerMeter: scale };
}

/** Room under a world-space point, for teleport clicks. */
export function roomAtPoint(map: MapPayload, wx: number, wy: number): number | null {
  for (const room of map.rooms) {
    const [x, y, w, h] = room.rect;
    if (insideBox({ x, y, w, h }, wx, wy)) return room.id;
  }
  return null;
}
