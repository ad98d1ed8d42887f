"""Read-only HTTP service over a generated world, plus text pagination.

The world and texts are immutable after startup; every heavy response
(layout, map, chunks) is serialized once to canonical bytes so identical
requests return identical bodies in well under the latency budget. Only
the context cache writes, under the context module's contract.
"""

from __future__ import annotations

import tempfile
from dataclasses import dataclass, field

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, Response

from .catalog import BookRecord
from .context import (
    KINDS,
    ContextBackendError,
    ContextCache,
    HttpBackend,
    MockBackend,
    get_context,
)
from .worldfile import canonical_json


@dataclass
class Page:
    book_id: str
    index: int
    text: str
    total_pages: int


def paginate_text(text: str, chars_per_page: int, book_id: str = "") -> list[Page]:
    """Split normalized text into pages of at most chars_per_page characters.

    Pages break at the last line feed inside the window, else the last
    whitespace, else hard; boundaries consume nothing, so concatenating all
    pages reproduces the text exactly. Empty text yields one empty page.
    """
    if chars_per_page <= 0:
        raise ValueError("chars_per_page must be > 0")
    if text == "":
        return [Page(book_id=book_id, index=0, text="", total_pages=1)]
    chunks: list[str] = []
    rest = text
    while rest:
        if len(rest) <= chars_per_page:
            chunks.append(rest)
            break
        window = rest[:chars_per_page]
        cut = window.rfind("\n")
        if cut < 0:
            cut = window.rfind(" ")
        cut = cut + 1 if cut >= 0 else chars_per_page
        chunks.append(rest[:cut])
        rest = rest[cut:]
    total = len(chunks)
    return [
        Page(book_id=book_id, index=i, text=chunk, total_pages=total)
        for i, chunk in enumerate(chunks)
    ]


@dataclass
class ServeConfig:
    chars_per_page: int | None = None  # None: use the world's value
    context_backend: str = "mock"
    context_url: str = ""
    cache_dir: str | None = None
    cors_origins: list[str] = field(default_factory=lambda: ["*"])


def _error(status: int, message: str, **extra) -> JSONResponse:
    body = {"error": message}
    body.update(extra)
    return JSONResponse(status_code=status, content=body)


def create_app(world: dict, texts: dict[str, str], config: ServeConfig | None = None) -> FastAPI:
    """Build the service over a parsed WorldFile dict and normalized texts."""
    config = config or ServeConfig()
    chars_per_page = config.chars_per_page or world["params"].get("chars_per_page", 1800)

    books = {b["id"]: b for b in world["catalog"]["books"]}
    pages: dict[str, list[Page]] = {
        bid: paginate_text(texts.get(bid, ""), chars_per_page, book_id=bid) for bid in books
    }
    neighbors: dict[int, set[int]] = {r["id"]: set() for r in world["layout"]["rooms"]}
    for conn in world["layout"]["connections"]:
        neighbors[conn["room_a"]].add(conn["room_b"])
        neighbors[conn["room_b"]].add(conn["room_a"])

    layout_bytes = canonical_json(world["layout"])
    map_payload = dict(world["map"])
    map_payload["signboards"] = world["signboards"]
    map_bytes = canonical_json(map_payload)
    chunk_bytes = {ch["room_id"]: canonical_json(ch) for ch in world["chunks"]}

    if config.context_backend == "http":
        backend = HttpBackend(config.context_url)
    elif config.context_backend == "mock":
        backend = MockBackend()
    else:
        raise ValueError(f"unknown context backend {config.context_backend!r}")
    cache_dir = config.cache_dir or tempfile.mkdtemp(prefix="libworld-context-")
    cache = ContextCache(cache_dir)

    app = FastAPI(title="libworld server", docs_url=None, redoc_url=None)
    app.add_middleware(
        CORSMiddleware,
        allow_origins=config.cors_origins,
        allow_methods=["GET"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def _bad_request(_request: Request, exc: RequestValidationError):
        return _error(400, f"malformed request: {exc.errors()[0]['msg']}")

    def _json_bytes(payload: bytes) -> Response:
        return Response(content=payload, media_type="application/json")

    @app.get("/healthz")
    def healthz():
        return {"status": "ok"}

    @app.get("/api/layout")
    def api_layout():
        return _json_bytes(layout_bytes)

    @app.get("/api/map")
    def api_map():
        return _json_bytes(map_bytes)

    @app.get("/api/rooms/{room_id}")
    def api_room(room_id: int):
        payload = chunk_bytes.get(room_id)
        if payload is None:
            return _error(404, f"unknown room id {room_id}")
        return _json_bytes(payload)

    @app.get("/api/rooms/{room_id}/visible")
    def api_visible(room_id: int):
        if room_id not in neighbors:
            return _error(404, f"unknown room id {room_id}")
        return {
            "current": room_id,
            "structure": sorted({room_id} | neighbors[room_id]),
            "interior": [room_id],
        }

    @app.get("/api/books/{book_id}")
    def api_book(book_id: str):
        book = books.get(book_id)
        if book is None:
            return _error(404, f"unknown book id {book_id!r}")
        return {
            "id": book["id"],
            "title": book["title"],
            "author": book["author"],
            "year": book["year"],
            "category": book["category"],
            "room_id": book["room_id"],
            "total_pages": len(pages[book_id]),
        }

    @app.get("/api/books/{book_id}/pages/{index}")
    def api_page(book_id: str, index: int):
        book_pages = pages.get(book_id)
        if book_pages is None:
            return _error(404, f"unknown book id {book_id!r}")
        if index < 0 or index >= len(book_pages):
            return _error(404, f"page {index} out of range for book {book_id!r}")
        page = book_pages[index]
        return {
            "book_id": page.book_id,
            "index": page.index,
            "text": page.text,
            "total_pages": page.total_pages,
        }

    @app.get("/api/books/{book_id}/context")
    def api_context(book_id: str, kind: str = ""):
        book = books.get(book_id)
        if book is None:
            return _error(404, f"unknown book id {book_id!r}")
        if kind not in KINDS:
            return _error(400, f"kind must be one of {'|'.join(KINDS)}")
        record = BookRecord(
            id=book["id"],
            title=book["title"],
            author=book["author"],
            year=book["year"],
            category=book["category"],
            text_uri=book["text_uri"],
            text_length=book["text_length"],
        )
        try:
            result = get_context(record, kind, backend, cache)
        except ContextBackendError as exc:
            return _error(
                502,
                str(exc),
                text=f"Context for {book['title']} is temporarily unavailable.",
            )
        return {
            "book_id": result.book_id,
            "kind": result.kind,
            "text": result.text,
            "backend": result.backend,
            "cached": result.cached,
            "fetched_at": result.fetched_at,
        }

    @app.get("/api/search")
    def api_search(q: str = "", category: str = ""):
        if not q and not category:
            return _error(400, "provide q and/or category")
        needle = q.lower()
        wanted = category.lower()
        matches = []
        for book in world["catalog"]["books"]:
            if wanted and book["category"].lower() != wanted:
                continue
            if needle and needle not in book["title"].lower() and needle not in book["category"].lower():
                continue
            matches.append(
                {
                    "book_id": book["id"],
                    "title": book["title"],
                    "category": book["category"],
                    "room_id": book["room_id"],
                }
            )
        return {"matches": matches}

    return app
