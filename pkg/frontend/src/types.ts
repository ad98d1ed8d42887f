// Payload shapes of the world server's JSON API.

export type Wall = "north" | "south" | "east" | "west";

export interface DoorInfo {
  id: string;
  wall: Wall;
  center_offset_m: number;
  width_m: number;
  kind: string;
  connects: [number | "world", number];
  neighbor_category: string;
}

export interface ShelfInfo {
  wall: Wall;
  offset_m: number;
  assigned: [string, number, number][];
}

export interface DecorInfo {
  kind: string;
  position: [number, number];
  rotation_deg: number;
  info_text: string;
}

export interface RoomInfo {
  id: number;
  category: string;
  rect: [number, number, number, number];
  height_m: number;
  orientation: string;
  book_count: number;
  shelves: ShelfInfo[];
  doors: DoorInfo[];
  decor: DecorInfo[];
}

export interface ConnectionInfo {
  id: string;
  kind: string;
  room_a: number;
  room_b: number;
  axis: "x" | "y";
  line: number;
  lo: number;
  hi: number;
  overlap_lo: number;
  overlap_hi: number;
}

export interface LayoutPayload {
  rooms: RoomInfo[];
  connections: ConnectionInfo[];
  bbox: [number, number, number, number];
}

export interface MapPayload {
  rooms: { id: number; rect: [number, number, number, number]; category: string }[];
  doors: { id: string; pos: [number, number] }[];
  teleports: { room_id: number; pos: [number, number] }[];
  category_index: [string, number][];
  signboards: { room_id: number; entries: [string, Wall][] }[];
}

export interface Primitive {
  id: string;
  kind: string;
  [key: string]: unknown;
}

export interface ChunkPayload {
  room_id: number;
  structure: Primitive[];
  interior: Primitive[];
}

export interface VisiblePayload {
  current: number;
  structure: number[];
  interior: number[];
}

export interface BookMeta {
  id: string;
  title: string;
  author: string;
  year: number;
  category: string;
  room_id: number;
  total_pages: number;
}

export interface PagePayload {
  book_id: string;
  index: number;
  text: string;
  total_pages: number;
}

export interface ContextPayload {
  book_id: string;
  kind: string;
  text: string;
  backend: string;
  cached: boolean;
  fetched_at: string;
}
