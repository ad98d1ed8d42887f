"""End-to-end world building: catalog -> layout -> map -> chunks -> world."""

from __future__ import annotations

from pathlib import Path

from .catalog import Catalog, group_by_category, normalize_text, validate_catalog
from .layoutgen import generate_layout
from .navmap import build_map
from .params import GenParams
from .scene import instantiate_room
from .server import paginate_text
from .worldfile import World


class PipelineError(ValueError):
    pass


def load_texts(catalog: Catalog, base_dir: str | Path) -> dict[str, str]:
    """Load and normalize every book's text; resolves relative text_uri
    against base_dir and fills text_length on the records."""
    base = Path(base_dir)
    texts: dict[str, str] = {}
    for book in catalog.books:
        uri = book.text_uri
        if "://" in uri:
            raise PipelineError(
                f"book {book.id!r}: only local text paths are supported, got {uri!r}"
            )
        path = Path(uri)
        if not path.is_absolute():
            path = base / path
        try:
            raw = path.read_bytes()
        except OSError as exc:
            raise PipelineError(f"book {book.id!r}: cannot read text {str(path)!r}: {exc}") from exc
        text = normalize_text(raw)
        texts[book.id] = text
        book.text_length = len(text)
    return texts


def build_world(
    catalog: Catalog,
    params: GenParams,
    seed: int,
    texts: dict[str, str],
    chars_per_page: int = 1800,
) -> World:
    """Assemble the full world bundle from a validated catalog and its texts."""
    report = validate_catalog(catalog)
    if report.errors:
        first = report.errors[0]
        raise PipelineError(f"catalog invalid: {first.book_id}: {first.message}")
    if chars_per_page <= 0:
        raise PipelineError("chars_per_page must be > 0")
    categories = group_by_category(catalog)
    layout = generate_layout(categories, params, seed)
    map_model, signboards = build_map(layout, params)
    chunks = [instantiate_room(room, params) for room in layout.rooms]

    room_by_category = {room.category: room.id for room in layout.rooms}
    pagination_index: dict[str, int] = {}
    catalog_meta: dict[str, dict] = {}
    for book in catalog.books:
        if book.id not in texts:
            raise PipelineError(f"no text loaded for book {book.id!r}")
        pages = paginate_text(texts[book.id], chars_per_page)
        pagination_index[book.id] = len(pages)
        catalog_meta[book.id] = {
            "id": book.id,
            "title": book.title,
            "author": book.author,
            "year": book.year,
            "category": book.category,
            "text_uri": book.text_uri,
            "text_length": len(texts[book.id]),
            "room_id": room_by_category[book.category],
        }

    return World(
        seed=seed,
        params=params,
        chars_per_page=chars_per_page,
        layout=layout,
        map_model=map_model,
        signboards=signboards,
        chunks=chunks,
        pagination_index=pagination_index,
        catalog_meta=catalog_meta,
        source_name=catalog.source_name,
    )
