// First-person locomotion: velocity integration with collide-and-slide
// against walls (door openings pass) and solid furniture, plus room
// transitions when crossing a door opening.

import { insideBox, roomBox, solidBoxes, wallSegments, type Box } from "./geometry.js";
import type { LayoutPayload, RoomInfo } from "./types.js";

export const PLAYER_RADIUS = 0.25;
export const MOVE_SPEED = 2.2; // m/s
export const TURN_SPEED = 120; // deg/s (keyboard turn)

export interface PlayerState {
  x: number;
  y: number;
  headingDeg: number; // 0 = +x (east), counterclockwise
  roomId: number;
  heldBookId: string | null;
}

export interface MoveInput {
  forward: number; // -1..1
  strafe: number; // -1..1
  turn: number; // -1..1 (keyboard)
  mouseTurnDeg?: number;
}

interface CollisionWorld {
  rooms: Map<number, RoomInfo>;
  neighborsOf(roomId: number): number[];
}

export function buildCollisionWorld(layout: LayoutPayload): CollisionWorld {
  const rooms = new Map(layout.rooms.map((r) => [r.id, r]));
  const adjacency = new Map<number, number[]>();
  for (const room of layout.rooms) adjacency.set(room.id, []);
  for (const conn of layout.connections) {
    adjacency.get(conn.room_a)!.push(conn.room_b);
    adjacency.get(conn.room_b)!.push(conn.room_a);
  }
  return {
    rooms,
    neighborsOf: (roomId) => adjacency.get(roomId) ?? [],
  };
}

function collides(world: CollisionWorld, state: PlayerState, px: number, py: number): boolean {
  const nearby = [state.roomId, ...world.neighborsOf(state.roomId)];
  for (const roomId of nearby) {
    const room = world.rooms.get(roomId);
    if (!room) continue;
    for (const seg of wallSegments(room)) {
      if (seg.z0 > 0.5) continue; // lintels start above the player
      // Distance from the point to the axis-aligned segment.
      if (seg.y0 === seg.y1) {
        const lo = Math.min(seg.x0, seg.x1) - PLAYER_RADIUS;
        const hi = Math.max(seg.x0, seg.x1) + PLAYER_RADIUS;
        if (px >= lo && px <= hi && Math.abs(py - seg.y0) < PLAYER_RADIUS) return true;
      } else {
        const lo = Math.min(seg.y0, seg.y1) - PLAYER_RADIUS;
        const hi = Math.max(seg.y0, seg.y1) + PLAYER_RADIUS;
        if (py >= lo && py <= hi && Math.abs(px - seg.x0) < PLAYER_RADIUS) return true;
      }
    }
    for (const box of solidBoxes(room)) {
      const grown: Box = {
        x: box.x - PLAYER_RADIUS,
        y: box.y - PLAYER_RADIUS,
        w: box.w + 2 * PLAYER_RADIUS,
        h: box.h + 2 * PLAYER_RADIUS,
      };
      if (insideBox(grown, px, py)) return true;
    }
  }
  return false;
}

function roomAt(world: CollisionWorld, state: PlayerState, px: number, py: number): number {
  const current = world.rooms.get(state.roomId);
  if (current && insideBox(roomBox(current), px, py)) return state.roomId;
  for (const neighborId of world.neighborsOf(state.roomId)) {
    const neighbor = world.rooms.get(neighborId);
    if (neighbor && insideBox(roomBox(neighbor), px, py)) return neighborId;
  }
  return state.roomId;
}

/** One simulation step; dt in seconds. Pure: returns a new state. */
export function locomotionStep(
  world: CollisionWorld,
  state: PlayerState,
  input: MoveInput,
  dt: number,
): PlayerState {
  if (dt <= 0) throw new Error("dt must be > 0");
  let heading = state.headingDeg + input.turn * TURN_SPEED * dt + (input.mouseTurnDeg ?? 0);
  heading = ((heading % 360) + 360) % 360;

  const rad = (heading * Math.PI) / 180;
  const fx = Math.cos(rad);
  const fy = Math.sin(rad);
  // Strafe right = forward rotated -90 degrees.
  const sx = fy;
  const sy = -fx;
  const vx = (fx * input.forward + sx * input.strafe) * MOVE_SPEED;
  const vy = (fy * input.forward + sy * input.strafe) * MOVE_SPEED;

  // Axis-separated collide-and-slide: blocked axes zero out, the other slides.
  let nx = state.x;
  let ny = state.y;
  const tryX = nx + vx * dt;
  if (!collides(world, state, tryX, ny)) nx = tryX;
  const tryY = ny + vy * dt;
  if (!collides(world, state, nx, tryY)) ny = tryY;

  const roomId = roomAt(world, state, nx, ny);
  return { ...state, x: nx, y: ny, headingDeg: heading, roomId };
}
