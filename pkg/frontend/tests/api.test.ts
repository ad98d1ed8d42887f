import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { clientFor, fakeServer } from "./fixtures.js";

describe("api client", () => {
  it("parses layout and map payloads", async () => {
    const client = clientFor(fakeServer());
    const layout = await client.layout();
    expect(layout.rooms.length).toBe(3);
    const map = await client.map();
    expect(map.teleports.length).toBe(3);
    expect(map.signboards.length).toBe(3);
  });

  it("raises ApiError with the status for missing resources", async () => {
    const client = clientFor(fakeServer());
    await expect(client.room(99)).rejects.toMatchObject({ status: 404 });
  });

  it("maps network failures to status 0", async () => {
    const client = new ApiClient("http://test", async () => {
      throw new Error("connection refused");
    });
    try {
      await client.layout();
      expect.unreachable();
    } catch (err) {
      expect(err).toBeInstanceOf(ApiError);
      expect((err as ApiError).status).toBe(0);
    }
  });
});
