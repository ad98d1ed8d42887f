// Boot: fetch the world, wire input, run the loop. The server base URL
// comes from the ?server= query parameter (default: same origin or the
// local default port).

import { ApiClient, ApiError } from "./api.js";
import { buildCollisionWorld, locomotionStep, type MoveInput, type PlayerState } from "./player.js";
import { WorldState } from "./worldState.js";
import { buildScene, renderFrame } from "./render.js";
import { grab, hoverExhibit, hoverSpine, spinExhibit, teleport, tooltipFor } from "./interact.js";
import {
  ReaderTexts,
  openReader,
  panelFontPx,
  switchTab,
  turnPage,
  type ReaderState,
  type ReaderTab,
} from "./reader.js";
import { canvasToWorld, initialView, pan, roomAtPoint, worldToCanvas, zoom, type MapView } from "./mapView.js";
import type { BookMeta, LayoutPayload, MapPayload, Primitive, RoomInfo } from "./types.js";

const PANEL_DISTANCE_M = 1.2;

function baseUrl(): string {
  const fromQuery = new URLSearchParams(window.location.search).get("server");
  if (fromQuery) return fromQuery.replace(/\/$/, "");
  return "http://127.0.0.1:8080";
}

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

class Viewer {
  private api = new ApiClient(baseUrl());
  private layout!: LayoutPayload;
  private map!: MapPayload;
  private world!: ReturnType<typeof buildCollisionWorld>;
  private state!: WorldState;
  private player!: PlayerState;
  private reader: ReaderState | null = null;
  private readerTexts = new ReaderTexts(this.api);
  private bookMeta = new Map<string, BookMeta>();
  private pitchDeg = -5;
  private mouseTurn = 0;
  private keys = new Set<string>();
  private mapVisible = false;
  private mapView!: MapView;
  private hoveredBook: string | null = null;
  private hoveredExhibit: string | null = null;
  private exhibitSpins = new Map<string, number>();
  private lastTime = 0;

  private canvas = el<HTMLCanvasElement>("view");
  private mapCanvas = el<HTMLCanvasElement>("map");
  private tooltip = el<HTMLDivElement>("tooltip");
  private hud = el<HTMLDivElement>("hud");
  private errorBox = el<HTMLDivElement>("error");
  private readerBox = el<HTMLDivElement>("reader");
  private readerText = el<HTMLDivElement>("reader-text");
  private readerTitle = el<HTMLDivElement>("reader-title");
  private readerStatus = el<HTMLDivElement>("reader-status");

  async start(): Promise<void> {
    try {
      this.layout = await this.api.layout();
      this.map = await this.api.map();
    } catch (err) {
      this.showError(err);
      return;
    }
    this.errorBox.style.display = "none";
    this.world = buildCollisionWorld(this.layout);
    this.state = new WorldState(this.api, (id) => this.world.neighborsOf(id));

    const spawn = this.map.teleports.find((t) => t.room_id === 0) ?? this.map.teleports[0];
    this.player = {
      x: spawn.pos[0],
      y: spawn.pos[1],
      headingDeg: 0,
      roomId: spawn.room_id,
      heldBookId: null,
    };
    await this.state.enterRoom(this.player.roomId);
    this.mapView = initialView(this.map, this.mapCanvas.width, this.mapCanvas.height);
    this.wireInput();
    requestAnimationFrame((t) => this.frame(t));
  }

  private showError(err: unknown): void {
    const message = err instanceof ApiError ? err.message : String(err);
    this.errorBox.style.display = "block";
    this.errorBox.innerHTML =
      `<p>Could not load the world: ${message}</p><button id="retry">Retry</button>`;
    el<HTMLButtonElement>("retry").onclick = () => void this.start();
  }

  private wireInput(): void {
    window.addEventListener("keydown", (event) => {
      if (event.repeat) return;
      this.keys.add(event.key.toLowerCase());
      this.handleKey(event.key.toLowerCase());
    });
    window.addEventListener("keyup", (event) => this.keys.delete(event.key.toLowerCase()));

    this.canvas.addEventListener("click", () => {
      if (this.reader || this.mapVisible) return;
      if (document.pointerLockElement !== this.canvas) {
        this.canvas.requestPointerLock();
        return;
      }
      if (this.hoveredExhibit && !this.hoveredBook) {
        this.exhibitSpins = spinExhibit(this.exhibitSpins, this.hoveredExhibit);
        return;
      }
      const hovered = this.hoveredBook
        ? { bookId: this.hoveredBook, distance: 0 }
        : null;
      this.player = grab(this.player, hovered);
    });
    window.addEventListener("mousemove", (event) => {
      if (document.pointerLockElement === this.canvas && !this.reader && !this.mapVisible) {
        this.mouseTurn -= event.movementX * 0.14;
        this.pitchDeg = Math.max(-35, Math.min(35, this.pitchDeg - event.movementY * 0.08));
      }
    });

    this.mapCanvas.addEventListener("click", (event) => {
      const rect = this.mapCanvas.getBoundingClientRect();
      const [wx, wy] = canvasToWorld(
        this.mapView, this.mapCanvas.width, this.mapCanvas.height,
        event.clientX - rect.left, event.clientY - rect.top,
      );
      const roomId = roomAtPoint(this.map, wx, wy);
      if (roomId !== null) {
        this.player = teleport(this.player, this.map, roomId);
        void this.state.enterRoom(roomId);
        this.toggleMap(false);
      }
    });
    this.mapCanvas.addEventListener("wheel", (event) => {
      event.preventDefault();
      this.mapView = zoom(this.mapView, event.deltaY < 0 ? 1.15 : 1 / 1.15);
    });
    let dragging = false;
    this.mapCanvas.addEventListener("mousedown", () => (dragging = true));
    window.addEventListener("mouseup", () => (dragging = false));
    this.mapCanvas.addEventListener("mousemove", (event) => {
      if (dragging) this.mapView = pan(this.mapView, event.movementX, event.movementY);
    });

    el<HTMLButtonElement>("tab-content").onclick = () => this.setTab("content");
    el<HTMLButtonElement>("tab-info").onclick = () => this.setTab("additional_info");
    el<HTMLButtonElement>("tab-summary").onclick = () => this.setTab("summary");
    el<HTMLButtonElement>("page-back").onclick = () => this.page(-1);
    el<HTMLButtonElement>("page-fwd").onclick = () => this.page(+1);
    el<HTMLButtonElement>("reader-close").onclick = () => this.closeReader();
  }

  private handleKey(key: string): void {
    if (key === "m") this.toggleMap(!this.mapVisible);
    if (key === "escape") this.closeReader();
    if (this.reader) {
      if (key === "arrowleft") this.page(-1);
      if (key === "arrowright") this.page(+1);
      return;
    }
    if (key === "e" || key === "enter") {
      const bookId = this.player.heldBookId ?? this.hoveredBook;
      if (bookId) void this.openBook(bookId);
    }
  }

  private toggleMap(show: boolean): void {
    this.mapVisible = show;
    this.mapCanvas.style.display = show ? "block" : "none";
  }

  private async bookInfo(bookId: string): Promise<BookMeta> {
    const cached = this.bookMeta.get(bookId);
    if (cached) return cached;
    const meta = await this.api.book(bookId);
    this.bookMeta.set(bookId, meta);
    return meta;
  }

  private async openBook(bookId: string): Promise<void> {
    const meta = await this.bookInfo(bookId);
    this.reader = openReader(meta);
    this.readerBox.style.display = "flex";
    this.readerTitle.textContent = `${meta.title} — ${meta.author} (${meta.year})`;
    this.readerText.style.fontSize = `${panelFontPx(32, PANEL_DISTANCE_M, this.canvas.height)}px`;
    await this.refreshReader();
  }

  private closeReader(): void {
    this.reader = null;
    this.readerBox.style.display = "none";
  }

  private setTab(tab: ReaderTab): void {
    if (!this.reader) return;
    this.reader = switchTab(this.reader, tab);
    void this.refreshReader();
  }

  private page(delta: number): void {
    if (!this.reader) return;
    this.reader = turnPage(this.reader, delta);
    void this.refreshReader();
  }

  private async refreshReader(): Promise<void> {
    const reader = this.reader;
    if (!reader) return;
    try {
      if (reader.tab === "content") {
        const text = await this.readerTexts.pageText(reader.bookId, reader.pageIndex);
        this.readerText.textContent = text;
        this.readerStatus.textContent = `page ${reader.pageIndex + 1} / ${reader.totalPages}`;
      } else {
        this.readerStatus.textContent = reader.tab.replace("_", " ");
        this.readerText.textContent = "…";
        const text = await this.readerTexts.contextText(reader.bookId, reader.tab);
        if (this.reader && this.reader.tab === reader.tab) {
          this.readerText.textContent = text;
        }
      }
    } catch (err) {
      this.readerText.textContent = `Unavailable: ${String(err)}`;
    }
  }

  private input(): MoveInput {
    const key = (k: string) => (this.keys.has(k) ? 1 : 0);
    const turn = this.mouseTurn;
    this.mouseTurn = 0;
    return {
      forward: key("w") - key("s"),
      strafe: key("d") - key("a"),
      turn: this.reader ? 0 : key("arrowleft") - key("arrowright"),
      mouseTurnDeg: turn,
    };
  }

  private frame(time: number): void {
    const dt = Math.min((time - this.lastTime) / 1000 || 0.016, 0.1);
    this.lastTime = time;

    if (!this.reader && !this.mapVisible && dt > 0) {
      const before = this.player.roomId;
      this.player = locomotionStep(this.world, this.player, this.input(), dt);
      if (this.player.roomId !== before) {
        void this.state.enterRoom(this.player.roomId);
      }
    }

    const ctx = this.canvas.getContext("2d")!;
    const rooms = this.state
      .visibleStructure()
      .map((id) => this.layout.rooms.find((r) => r.id === id))
      .filter((r): r is RoomInfo => Boolean(r));
    const interiors = new Map<number, Primitive[]>();
    interiors.set(this.player.roomId, this.state.interiorOf(this.player.roomId));
    const scene = buildScene(rooms, interiors);
    renderFrame(ctx, this.canvas.width, this.canvas.height, this.player, scene, this.pitchDeg);

    this.updateHover(scene);
    this.drawMap();
    this.updateHud();
    requestAnimationFrame((t) => this.frame(t));
  }

  private updateHover(scene: ReturnType<typeof buildScene>): void {
    const rad = (this.player.headingDeg * Math.PI) / 180;
    const interior = this.state.interiorOf(this.player.roomId);
    const hit = hoverSpine(
      this.player.x, this.player.y, Math.cos(rad), Math.sin(rad),
      this.pitchDeg, 1.6, interior,
    );
    void scene;
    this.hoveredBook = hit?.bookId ?? null;
    if (hit) {
      this.hoveredExhibit = null;
      void this.bookInfo(hit.bookId).then((meta) => {
        if (this.hoveredBook !== meta.id) return;
        const tip = tooltipFor(meta);
        this.tooltip.style.display = "block";
        this.tooltip.innerHTML =
          `<b>${tip.title}</b><br>${tip.author}<br>${tip.year}<br>${tip.category}`;
      }).catch(() => {
        this.tooltip.style.display = "none";
      });
      return;
    }
    const exhibit = hoverExhibit(
      this.player.x, this.player.y, Math.cos(rad), Math.sin(rad), interior,
    );
    this.hoveredExhibit = exhibit?.primId ?? null;
    if (exhibit) {
      const spin = this.exhibitSpins.get(exhibit.primId) ?? 0;
      this.tooltip.style.display = "block";
      this.tooltip.innerHTML =
        `<b>Exhibit</b> (click to rotate, ${spin}&deg;)<br>${exhibit.infoText}`;
    } else {
      this.tooltip.style.display = "none";
    }
  }

  private drawMap(): void {
    if (!this.mapVisible) return;
    const ctx = this.mapCanvas.getContext("2d")!;
    const { width, height } = this.mapCanvas;
    ctx.fillStyle = "#14161a";
    ctx.fillRect(0, 0, width, height);
    for (const room of this.map.rooms) {
      const [x, y, w, h] = room.rect;
      const [cx0, cy0] = worldToCanvas(this.mapView, width, height, x, y + h);
      const [cx1, cy1] = worldToCanvas(this.mapView, width, height, x + w, y);
      ctx.fillStyle = room.id === this.player.roomId ? "#3f6e4f" : "#2b3340";
      ctx.fillRect(cx0, cy0, cx1 - cx0, cy1 - cy0);
      ctx.strokeStyle = "#7d8594";
      ctx.strokeRect(cx0, cy0, cx1 - cx0, cy1 - cy0);
      ctx.fillStyle = "#d8dce2";
      ctx.font = "12px sans-serif";
      ctx.fillText(room.category, cx0 + 4, cy0 + 14);
    }
    for (const door of this.map.doors) {
      const [cx, cy] = worldToCanvas(this.mapView, width, height, door.pos[0], door.pos[1]);
      ctx.fillStyle = "#c9a227";
      ctx.fillRect(cx - 2, cy - 2, 4, 4);
    }
    const [px, py] = worldToCanvas(this.mapView, width, height, this.player.x, this.player.y);
    ctx.fillStyle = "#e05555";
    ctx.beginPath();
    ctx.arc(px, py, 4, 0, Math.PI * 2);
    ctx.fill();
  }

  private updateHud(): void {
    const room = this.layout.rooms.find((r) => r.id === this.player.roomId);
    const held = this.player.heldBookId ? ` | holding ${this.player.heldBookId} (E to read)` : "";
    this.hud.textContent =
      `${room?.category ?? "?"} (room ${this.player.roomId})${held} | WASD move, mouse turn, click grab, M map`;
  }
}

window.addEventListener("DOMContentLoaded", () => {
  void new Viewer().start();
});
