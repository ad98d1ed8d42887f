"""Command-line entry point: generate / validate / stats / serve.

Exit codes: 0 success, 2 usage or input error, 3 internal invariant
violation. Diagnostics go to stderr; only results go to stdout.
"""

from __future__ import annotations

import argparse
import os
import sys
import tempfile
from pathlib import Path

from .catalog import CatalogError, group_by_category, parse_catalog, validate_catalog
from .layoutgen import LayoutError
from .params import GenParams, ParamError
from .pipeline import PipelineError, build_world, load_texts
from .roomgen import PlanError
from .worldfile import WorldFileError, export_world, parse_world

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _fail(code: int, message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return code


def _read_config(path: str) -> dict[str, str]:
    values: dict[str, str] = {}
    try:
        raw = Path(path).read_text("utf-8")
    except OSError as exc:
        raise CatalogError(f"cannot read config {path!r}: {exc}") from exc
    for line_no, line in enumerate(raw.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise CatalogError(f"config {path}: line {line_no}: expected key=value")
        key, value = line.split("=", 1)
        values[key.strip().replace("-", "_")] = value.strip()
    return values


_PARAM_FLAGS = {
    "shelf_rows": int,
    "slots_per_row": int,
    "unit_width_m": float,
    "shelf_depth_m": float,
    "corridor_width_m": float,
    "wall_margin_m": float,
    "min_room_length_m": float,
    "room_height_m": float,
    "door_width_m": float,
}


def _add_param_flags(parser: argparse.ArgumentParser) -> None:
    for name, cast in _PARAM_FLAGS.items():
        parser.add_argument(f"--{name.replace('_', '-')}", type=cast, default=None)
    parser.add_argument("--ccw", action="store_true", default=None)
    parser.add_argument("--no-compress", action="store_true", default=None)
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--config", default=None, help="key=value defaults file")


def _build_params(args: argparse.Namespace) -> GenParams:
    values: dict = {}
    if args.config:
        config = _read_config(args.config)
        for key, raw in config.items():
            if key in _PARAM_FLAGS:
                values[key] = _PARAM_FLAGS[key](raw)
            elif key == "seed":
                values["seed"] = int(raw)
            elif key == "ccw":
                values["ccw"] = raw.lower() in ("1", "true", "yes")
            elif key == "compress":
                values["compress"] = raw.lower() in ("1", "true", "yes")
    for name in _PARAM_FLAGS:
        flag = getattr(args, name)
        if flag is not None:
            values[name] = flag
    if args.seed is not None:
        values["seed"] = args.seed
    if args.ccw:
        values["ccw"] = True
    if args.no_compress:
        values["compress"] = False
    params = GenParams(**values)
    params.validate()
    return params


def _load_catalog(path: str, fmt: str | None):
    p = Path(path)
    if not p.exists():
        raise CatalogError(f"catalog not found: {path}")
    fmt = fmt or ("jsonl" if p.suffix in (".jsonl", ".ndjson") else "csv")
    return parse_catalog(p.read_bytes(), fmt, source_name=p.name), p.parent


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        params = _build_params(args)
        catalog, base_dir = _load_catalog(args.catalog, args.format)
        report = validate_catalog(catalog)
        if report.errors:
            first = report.errors[0]
            raise CatalogError(f"catalog invalid: {first.book_id}: {first.message}")
        for finding in report.findings:
            print(f"warning: {finding.book_id}: {finding.message}", file=sys.stderr)
        texts = load_texts(catalog, base_dir)
    except (CatalogError, ParamError, PipelineError, TypeError, ValueError) as exc:
        return _fail(EXIT_INPUT, str(exc))

    try:
        world = build_world(
            catalog, params, params.seed, texts, chars_per_page=args.chars_per_page
        )
        payload = export_world(world)
    except (LayoutError, PlanError, WorldFileError, PipelineError) as exc:
        return _fail(EXIT_INTERNAL, str(exc))

    out = Path(args.out)
    out.parent.mkdir(parents=True, exist_ok=True)
    # No partial artifacts: write to a temp file, rename on success.
    fd, tmp = tempfile.mkstemp(dir=str(out.parent), suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(payload)
        os.replace(tmp, out)
    finally:
        if os.path.exists(tmp):
            os.unlink(tmp)

    layout = world.layout
    bbox = layout.bbox
    area = (bbox[2] - bbox[0]) * (bbox[3] - bbox[1])
    print(
        f"rooms={len(layout.rooms)} connections={len(layout.connections)} "
        f"books={len(world.catalog_meta)} bbox_area={area:.1f}"
    )
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        catalog, _ = _load_catalog(args.catalog, args.format)
    except CatalogError as exc:
        return _fail(EXIT_INPUT, str(exc))
    report = validate_catalog(catalog)
    for finding in report.findings:
        print(f"{finding.severity}\t{finding.book_id}\t{finding.message}")
    if report.errors:
        return _fail(EXIT_INPUT, f"{len(report.errors)} error finding(s)")
    try:
        categories = group_by_category(catalog)
    except CatalogError as exc:
        return _fail(EXIT_INPUT, str(exc))
    print(f"ok: {len(catalog.books)} books in {len(categories)} categories")
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    path = Path(args.world)
    if not path.exists():
        return _fail(EXIT_INPUT, f"world not found: {args.world}")
    try:
        world = parse_world(path.read_bytes())
    except WorldFileError as exc:
        return _fail(EXIT_INTERNAL, str(exc))

    degree: dict[int, int] = {r["id"]: 0 for r in world["layout"]["rooms"]}
    for conn in world["layout"]["connections"]:
        degree[conn["room_a"]] += 1
        degree[conn["room_b"]] += 1

    print("room\tcategory\tbooks\tarea_m2\tdegree")
    total_books = 0
    total_area = 0.0
    for room in world["layout"]["rooms"]:
        x, y, w, h = room["rect"]
        books = sum(len(s["assigned"]) for s in room["shelves"])
        total_books += books
        total_area += w * h
        print(f"{room['id']}\t{room['category']}\t{books}\t{w * h:.1f}\t{degree[room['id']]}")
    bbox = world["layout"]["bbox"]
    bbox_area = (bbox[2] - bbox[0]) * (bbox[3] - bbox[1])
    fill = total_area / bbox_area if bbox_area > 0 else 0.0
    print(f"total\t-\t{total_books}\t{total_area:.1f}\t-")
    print(f"bbox_area={bbox_area:.1f} fill_ratio={fill:.3f}")
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server import ServeConfig, create_app

    path = Path(args.world)
    if not path.exists():
        return _fail(EXIT_INPUT, f"world not found: {args.world}")
    try:
        world = parse_world(path.read_bytes())
    except WorldFileError as exc:
        return _fail(EXIT_INTERNAL, str(exc))

    texts_base = Path(args.texts_base) if args.texts_base else path.parent
    texts: dict[str, str] = {}
    from .catalog import normalize_text

    for book in world["catalog"]["books"]:
        uri = book["text_uri"]
        text_path = Path(uri)
        if not text_path.is_absolute():
            text_path = texts_base / text_path
        try:
            texts[book["id"]] = normalize_text(text_path.read_bytes())
        except OSError as exc:
            return _fail(EXIT_INPUT, f"cannot read text for {book['id']!r}: {exc}")

    config = ServeConfig(
        chars_per_page=args.chars_per_page,
        context_backend=args.context_backend,
        context_url=args.context_url,
        cache_dir=args.cache_dir,
    )
    app = create_app(world, texts, config)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="libworld",
        description="Generate and serve explorable library worlds from book catalogs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("generate", help="build a world file from a catalog")
    gen.add_argument("--catalog", required=True)
    gen.add_argument("--format", choices=("csv", "jsonl"), default=None)
    gen.add_argument("--out", required=True)
    gen.add_argument("--chars-per-page", type=int, default=1800)
    _add_param_flags(gen)
    gen.set_defaults(func=cmd_generate)

    val = sub.add_parser("validate", help="validate a catalog file")
    val.add_argument("--catalog", required=True)
    val.add_argument("--format", choices=("csv", "jsonl"), default=None)
    val.set_defaults(func=cmd_validate)

    stats = sub.add_parser("stats", help="summarize a world file")
    stats.add_argument("--world", required=True)
    stats.set_defaults(func=cmd_stats)

    serve = sub.add_parser("serve", help="serve a world file over HTTP")
    serve.add_argument("--world", required=True)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--chars-per-page", type=int, default=None)
    serve.add_argument("--context-backend", choices=("mock", "http"), default="mock")
    serve.add_argument("--context-url", default="")
    serve.add_argument("--cache-dir", default=None)
    serve.add_argument("--texts-base", default=None)
    serve.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except KeyboardInterrupt:
        return 130


if __name__ == "__main__":
    sys.exit(main())
