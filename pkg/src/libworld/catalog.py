"""Book catalog ingestion: parsing, validation, grouping, text normalization.

Input formats are csv (header row required, schema
``id,title,author,year,category,text_uri``) and jsonl (one object per line,
same field names). Everything is UTF-8 and order-preserving: the catalog's
row order is the determinism anchor for the whole generation pipeline.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field

CSV_FIELDS = ("id", "title", "author", "year", "category", "text_uri")


class CatalogError(ValueError):
    """Malformed catalog input; message carries line number / field name."""


@dataclass
class BookRecord:
    id: str
    title: str
    author: str
    year: int
    category: str
    text_uri: str
    text_length: int = 0


@dataclass
class Catalog:
    books: list[BookRecord]
    source_name: str = ""


@dataclass
class Category:
    name: str
    books: list[BookRecord]


@dataclass
class Finding:
    severity: str  # "error" | "warning"
    book_id: str
    message: str


@dataclass
class ValidationReport:
    findings: list[Finding] = field(default_factory=list)

    @property
    def errors(self) -> list[Finding]:
        return [f for f in self.findings if f.severity == "error"]

    @property
    def ok(self) -> bool:
        return not self.findings


def _decode(data: bytes | str) -> str:
    if isinstance(data, str):
        return data
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CatalogError(f"input is not valid UTF-8: {exc}") from exc


def _make_record(raw: dict, line: int, seen_ids: set[str]) -> BookRecord:
    values = {}
    for name in CSV_FIELDS:
        if name not in raw or raw[name] is None:
            raise CatalogError(f"line {line}: {name} missing")
        values[name] = raw[name]

    for name in ("id", "title", "author", "category", "text_uri"):
        text = str(values[name]).strip()
        if not text and name in ("id", "category", "text_uri"):
            raise CatalogError(f"line {line}: {name} empty")
        values[name] = text

    year = values["year"]
    if isinstance(year, bool) or not isinstance(year, (int, str)):
        raise CatalogError(f"line {line}: year not an integer")
    if isinstance(year, str):
        try:
            year = int(year.strip())
        except ValueError:
            raise CatalogError(f"line {line}: year not an integer") from None
    values["year"] = year

    if values["id"] in seen_ids:
        raise CatalogError(f"line {line}: duplicate id {values['id']!r}")
    seen_ids.add(values["id"])

    return BookRecord(**values)


def _parse_csv(text: str, source_name: str) -> Catalog:
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise CatalogError("line 1: missing header row") from None
    if [h.strip() for h in header] != list(CSV_FIELDS):
        raise CatalogError(
            f"line 1: header must be {','.join(CSV_FIELDS)}, got {','.join(header)}"
        )
    books: list[BookRecord] = []
    seen: set[str] = set()
    for row in reader:
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(CSV_FIELDS):
            raise CatalogError(
                f"line {line}: expected {len(CSV_FIELDS)} fields, got {len(row)}"
            )
        books.append(_make_record(dict(zip(CSV_FIELDS, row)), line, seen))
    return Catalog(books=books, source_name=source_name)


def _parse_jsonl(text: str, source_name: str) -> Catalog:
    books: list[BookRecord] = []
    seen: set[str] = set()
    for line_no, line in enumerate(text.split("\n"), start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise CatalogError(f"line {line_no}: invalid JSON: {exc.msg}") from exc
        if not isinstance(obj, dict):
            raise CatalogError(f"line {line_no}: expected an object")
        books.append(_make_record(obj, line_no, seen))
    return Catalog(books=books, source_name=source_name)


def parse_catalog(data: bytes | str, fmt: str, source_name: str = "") -> Catalog:
    """Parse csv or jsonl bytes into a Catalog, preserving input order."""
    text = _decode(data)
    if fmt == "csv":
        return _parse_csv(text, source_name)
    if fmt == "jsonl":
        return _parse_jsonl(text, source_name)
    raise CatalogError(f"unknown catalog format {fmt!r}")


def serialize_catalog(cat: Catalog, fmt: str) -> bytes:
    """Inverse of parse_catalog for round-tripping catalogs."""
    if fmt == "csv":
        buf = io.StringIO(newline="")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(CSV_FIELDS)
        for b in cat.books:
            writer.writerow([b.id, b.title, b.author, b.year, b.category, b.text_uri])
        return buf.getvalue().encode("utf-8")
    if fmt == "jsonl":
        lines = [
            json.dumps(
                {
                    "id": b.id,
                    "title": b.title,
                    "author": b.author,
                    "year": b.year,
                    "category": b.category,
                    "text_uri": b.text_uri,
                },
                ensure_ascii=False,
            )
            for b in cat.books
        ]
        return ("\n".join(lines) + ("\n" if lines else "")).encode("utf-8")
    raise CatalogError(f"unknown catalog format {fmt!r}")


def _uri_well_formed(uri: str) -> bool:
    if not uri or any(c.isspace() for c in uri):
        return False
    if "://" in uri:
        scheme = uri.split("://", 1)[0]
        return scheme in ("http", "https", "file")
    return True  # plain path


def validate_catalog(cat: Catalog) -> ValidationReport:
    """Check record invariants without mutating anything; findings are data."""
    report = ValidationReport()
    seen: dict[str, int] = {}
    for b in cat.books:
        if not b.id:
            report.findings.append(Finding("error", b.id, "empty id"))
        elif b.id in seen:
            report.findings.append(Finding("error", b.id, f"duplicate id {b.id!r}"))
        else:
            seen[b.id] = 1
        if not b.category.strip():
            report.findings.append(Finding("error", b.id, "category empty"))
        if not b.title.strip():
            report.findings.append(Finding("warning", b.id, "title empty"))
        if not _uri_well_formed(b.text_uri):
            report.findings.append(Finding("error", b.id, f"malformed text_uri {b.text_uri!r}"))
        if b.year < 1400 or b.year > 2100:
            report.findings.append(Finding("warning", b.id, f"year {b.year} implausible"))
        if b.text_length < 0:
            report.findings.append(Finding("error", b.id, "negative text_length"))
    return report


def group_by_category(cat: Catalog) -> list[Category]:
    """Partition books into categories ordered by first appearance."""
    if not cat.books:
        raise CatalogError("no categories: catalog is empty")
    order: list[str] = []
    groups: dict[str, list[BookRecord]] = {}
    for b in cat.books:
        if b.category not in groups:
            groups[b.category] = []
            order.append(b.category)
        groups[b.category].append(b)
    return [Category(name=name, books=groups[name]) for name in order]


def normalize_text(raw: bytes | str) -> str:
    """Canonicalize book text: LF endings, tabs -> 4-space stops, no trailing spaces."""
    text = _decode(raw)
    text = text.replace("\r\n", "\n").replace("\r", "\n")
    text = text.expandtabs(4)
    return "\n".join(line.rstrip(" ") for line in text.split("\n"))
