// Loaded-chunk registry enforcing the culling contract client-side:
// structure is kept for the current room and its neighbors, interiors
// exist only for the occupied room. Stale async responses for rooms the
// player already left are discarded.

import type { ApiClient } from "./api.js";
import type { ChunkPayload, Primitive } from "./types.js";

export interface WorldStateDump {
  currentRoom: number;
  structureLoaded: number[];
  interiorLoaded: number[];
}

export class WorldState {
  private structure = new Map<number, Primitive[]>();
  private interior = new Map<number, Primitive[]>();
  private chunkCache = new Map<number, ChunkPayload>();
  private currentRoom = -1;
  private generation = 0;
  private inflight = new Set<number>();

  constructor(
    private api: ApiClient,
    private neighborsOf: (roomId: number) => number[],
  ) {}

  get current(): number {
    return this.currentRoom;
  }

  structureOf(roomId: number): Primitive[] {
    return this.structure.get(roomId) ?? [];
  }

  interiorOf(roomId: number): Primitive[] {
    return this.interior.get(roomId) ?? [];
  }

  /** Rooms whose structure should render right now. */
  visibleStructure(): number[] {
    return [...this.structure.keys()].sort((a, b) => a - b);
  }

  dump(): WorldStateDump {
    return {
      currentRoom: this.currentRoom,
      structureLoaded: [...this.structure.keys()].sort((a, b) => a - b),
      interiorLoaded: [...this.interior.keys()].sort((a, b) => a - b),
    };
  }

  private async fetchChunk(roomId: number): Promise<ChunkPayload> {
    const cached = this.chunkCache.get(roomId);
    if (cached) return cached;
    if (this.inflight.has(roomId)) {
      // One in-flight request per room: poll the cache until it lands.
      while (this.inflight.has(roomId)) {
        await new Promise((resolve) => setTimeout(resolve, 5));
      }
      const ready = this.chunkCache.get(roomId);
      if (ready) return ready;
    }
    this.inflight.add(roomId);
    try {
      const chunk = await this.api.room(roomId);
      this.chunkCache.set(roomId, chunk);
      return chunk;
    } finally {
      this.inflight.delete(roomId);
    }
  }

  /** Reconcile loaded sets after a room change. */
  async enterRoom(roomId: number): Promise<void> {
    const generation = ++this.generation;
    this.currentRoom = roomId;
    const wantStructure = new Set([roomId, ...this.neighborsOf(roomId)]);

    // Unload synchronously: the interior of any room but the current one
    // must never survive a transition, loaded or in flight.
    for (const loaded of [...this.interior.keys()]) {
      if (loaded !== roomId) this.interior.delete(loaded);
    }
    for (const loaded of [...this.structure.keys()]) {
      if (!wantStructure.has(loaded)) this.structure.delete(loaded);
    }

    const chunks = await Promise.all([...wantStructure].map((id) => this.fetchChunk(id)));
    if (generation !== this.generation) return; // superseded: discard
    for (const chunk of chunks) {
      this.structure.set(chunk.room_id, chunk.structure);
      if (chunk.room_id === roomId) {
        this.interior.set(roomId, chunk.interior);
      }
    }
  }
}
