// Thin typed client over the world server. The fetch function is
// injectable so logic tests can run without a network.

import type {
  BookMeta,
  ChunkPayload,
  ContextPayload,
  LayoutPayload,
  MapPayload,
  PagePayload,
  VisiblePayload,
} from "./types.js";

export type FetchLike = (url: string) => Promise<{
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  private async get<T>(path: string): Promise<T> {
    let response;
    try {
      response = await this.fetchFn(this.baseUrl + path);
    } catch (err) {
      throw new ApiError(0, `server unreachable: ${String(err)}`);
    }
    if (!response.ok) {
      throw new ApiError(response.status, `GET ${path} -> ${response.status}`);
    }
    return (await response.json()) as T;
  }

  layout(): Promise<LayoutPayload> {
    return this.get("/api/layout");
  }

  map(): Promise<MapPayload> {
    return this.get("/api/map");
  }

  room(id: number): Promise<ChunkPayload> {
    return this.get(`/api/rooms/${id}`);
  }

  visible(id: number): Promise<VisiblePayload> {
    return this.get(`/api/rooms/${id}/visible`);
  }

  book(id: string): Promise<BookMeta> {
    return this.get(`/api/books/${encodeURIComponent(id)}`);
  }

  page(bookId: string, index: number): Promise<PagePayload> {
    return this.get(`/api/books/${encodeURIComponent(bookId)}/pages/${index}`);
  }

  context(bookId: string, kind: "summary" | "additional_info"): Promise<ContextPayload> {
    return this.get(`/api/books/${encodeURIComponent(bookId)}/context?kind=${kind}`);
  }
}
