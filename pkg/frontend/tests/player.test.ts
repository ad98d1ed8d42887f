import { describe, expect, it } from "vitest";

import {
  buildCollisionWorld,
  locomotionStep,
  type MoveInput,
  type PlayerState,
} from "../src/player.js";
import { demoLayout, demoMap } from "./fixtures.js";

const world = buildCollisionWorld(demoLayout);

function spawnIn(roomId: number): PlayerState {
  const teleport = demoMap.teleports.find((t) => t.room_id === roomId)!;
  return {
    x: teleport.pos[0],
    y: teleport.pos[1],
    headingDeg: 0,
    roomId,
    heldBookId: null,
  };
}

const idle: MoveInput = { forward: 0, strafe: 0, turn: 0 };

describe("locomotion", () => {
  it("zero input leaves the state unchanged", () => {
    const start = spawnIn(0);
    const next = locomotionStep(world, start, idle, 0.016);
    expect(next).toEqual(start);
  });

  it("walking head-on into a wall does not advance along the normal", () => {
    // Room 0 spans y in [0, 3]; face north and run into the shelf wall.
    let state: PlayerState = { ...spawnIn(0), headingDeg: 90 };
    for (let i = 0; i < 400; i++) {
      state = locomotionStep(world, state, { ...idle, forward: 1 }, 0.016);
    }
    const room = demoLayout.rooms[0];
    expect(state.roomId).toBe(0);
    expect(state.y).toBeLessThan(room.rect[1] + room.rect[3]);
    expect(state.x).toBeCloseTo(spawnIn(0).x, 5); // slid nowhere sideways
  });

  it("crossing the doorway between rooms 0 and 1 flips the room id", () => {
    // The chain door 0-1 sits on x = 4 at y in [0.9, 2.1].
    const door = demoLayout.connections.find((c) => c.id === "door-c0-1")!;
    const midY = (door.lo + door.hi) / 2;
    let state: PlayerState = {
      x: 3.0,
      y: midY,
      headingDeg: 0, // facing east
      roomId: 0,
      heldBookId: null,
    };
    const seen: number[] = [];
    for (let i = 0; i < 300; i++) {
      state = locomotionStep(world, state, { ...idle, forward: 1 }, 0.016);
      seen.push(state.roomId);
      if (state.roomId === 1 && state.x > 4.5) break;
    }
    expect(state.roomId).toBe(1);
    // The flip happened exactly when the opening plane was crossed.
    const flipIndex = seen.findIndex((r) => r === 1);
    expect(flipIndex).toBeGreaterThan(0);
  });

  it("walking at the shared wall outside the opening stays in the room", () => {
    let state: PlayerState = {
      x: 3.2,
      y: 2.7, // north of the opening's upper edge (2.1)
      headingDeg: 0,
      roomId: 0,
      heldBookId: null,
    };
    for (let i = 0; i < 300; i++) {
      state = locomotionStep(world, state, { ...idle, forward: 1 }, 0.016);
    }
    expect(state.roomId).toBe(0);
    expect(state.x).toBeLessThan(4.0);
  });

  it("turn input wraps heading into [0, 360)", () => {
    let state = spawnIn(0);
    state = locomotionStep(world, state, { ...idle, turn: -1 }, 1.0);
    expect(state.headingDeg).toBeGreaterThanOrEqual(0);
    expect(state.headingDeg).toBeLessThan(360);
  });
});
