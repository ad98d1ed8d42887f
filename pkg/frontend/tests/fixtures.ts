// Shared wiring for logic tests: the committed fixtures are real output of
// the generator for the demo catalog (seed 42).

import layoutJson from "./fixtures/demo-layout.json";
import mapJson from "./fixtures/demo-map.json";
import chunksJson from "./fixtures/demo-chunks.json";

import { ApiClient, type FetchLike } from "../src/api.js";
import type { ChunkPayload, LayoutPayload, MapPayload } from "../src/types.js";

export const demoLayout = layoutJson as unknown as LayoutPayload;
export const demoMap = mapJson as unknown as MapPayload;
export const demoChunks = chunksJson as unknown as ChunkPayload[];

export interface FakeServer {
  fetch: FetchLike;
  calls: string[];
}

export function fakeServer(extraRoutes: Record<string, unknown> = {}): FakeServer {
  const routes: Record<string, unknown> = {
    "/api/layout": demoLayout,
    "/api/map": demoMap,
    ...extraRoutes,
  };
  for (const chunk of demoChunks) {
    routes[`/api/rooms/${chunk.room_id}`] = chunk;
  }
  const calls: string[] = [];
  const fetchFn: FetchLike = async (url) => {
    const path = url.replace(/^https?:\/\/[^/]+/, "");
    calls.push(path);
    if (path in routes) {
      return { ok: true, status: 200, json: async () => routes[path] };
    }
    return { ok: false, status: 404, json: async () => ({ error: "not found" }) };
  };
  return { fetch: fetchFn, calls };
}

export function clientFor(server: FakeServer): ApiClient {
  return new ApiClient("http://test", server.fetch);
}
