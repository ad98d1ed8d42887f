// Reading panel state: three tabs (content / additional_info / summary),
// page turning with index clamping, lazy context fetches, scroll offsets.

import type { ApiClient } from "./api.js";
import type { BookMeta } from "./types.js";

export type ReaderTab = "content" | "additional_info" | "summary";

export interface ReaderState {
  bookId: string;
  tab: ReaderTab;
  pageIndex: number;
  totalPages: number;
  scrollOffset: { additional_info: number; summary: number };
}

export function openReader(book: BookMeta): ReaderState {
  return {
    bookId: book.id,
    tab: "content",
    pageIndex: 0,
    totalPages: book.total_pages,
    scrollOffset: { additional_info: 0, summary: 0 },
  };
}

/** Page turns clamp at both ends; context tabs ignore page turns. */
export function turnPage(state: ReaderState, delta: number): ReaderState {
  if (state.tab !== "content") return state;
  const next = Math.min(Math.max(state.pageIndex + delta, 0), state.totalPages - 1);
  return { ...state, pageIndex: next };
}

export function switchTab(state: ReaderState, tab: ReaderTab): ReaderState {
  return { ...state, tab };
}

export function scrollContext(state: ReaderState, delta: number): ReaderState {
  if (state.tab === "content") return state;
  const key = state.tab;
  const next = Math.max(0, state.scrollOffset[key] + delta);
  return { ...state, scrollOffset: { ...state.scrollOffset, [key]: next } };
}

/**
 * Text cache with lazy context fetches: a tab's text is requested from the
 * server the first time the tab is shown, then reused.
 */
export class ReaderTexts {
  private pages = new Map<string, string>();
  private contexts = new Map<string, string>();

  constructor(private api: ApiClient) {}

  async pageText(bookId: string, index: number): Promise<string> {
    const key = `${bookId}:${index}`;
    const hit = this.pages.get(key);
    if (hit !== undefined) return hit;
    const page = await this.api.page(bookId, index);
    this.pages.set(key, page.text);
    return page.text;
  }

  async contextText(bookId: string, kind: "additional_info" | "summary"): Promise<string> {
    const key = `${bookId}:${kind}`;
    const hit = this.contexts.get(key);
    if (hit !== undefined) return hit;
    const payload = await this.api.context(bookId, kind);
    this.contexts.set(key, payload.text);
    return payload.text;
  }
}

/**
 * On-screen font size (px) that reproduces a dmm text height at a simulated
 * viewing distance: 1 dmm = 1 mm per meter of distance, projected through
 * a pinhole with the given vertical field of view.
 */
export function panelFontPx(
  dmm: number,
  distanceM: number,
  canvasHeightPx: number,
  verticalFovDeg = 60,
): number {
  const heightM = (dmm / 1000) * distanceM;
  const viewHeightM = 2 * distanceM * Math.tan(((verticalFovDeg / 2) * Math.PI) / 180);
  return (heightM / viewHeightM) * canvasHeightPx;
}
