"""Per-book reading context from a pluggable completion backend.

The default backend is a deterministic mock so the whole system runs (and
tests run) offline; an HTTP backend posts the prompt as JSON to a
configured endpoint with a bearer token taken from the environment.
Results are cached one file per (book, kind, template version).
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path

import httpx

from .catalog import BookRecord

KINDS = ("additional_info", "summary")
TEMPLATE_VERSION = 1
TOKEN_ENV_VAR = "LIBWORLD_CONTEXT_TOKEN"

_PROMPTS = {
    "additional_info": "Provide background information about the book {title} by {author} ({year}).",
    "summary": "Summarize the book {title} by {author}.",
}

_SUMMARY_PREFIX = "Summarize the book "
_INFO_PREFIX = "Provide background information about the book "
_FALLBACK = "Nothing is known about this work."

_TONE_WORDS = (
    "measured", "restless", "quiet", "ornate", "spare", "wry",
    "brooding", "luminous", "plain", "urgent", "patient", "sly",
    "stately", "rough", "tender", "cold",
)
_THEME_WORDS = (
    "memory", "voyages", "inheritance", "exile", "courtship", "ruin",
    "harvests", "letters", "debts", "storms", "borders", "ghosts",
    "trials", "gardens", "maps", "rivals",
)


class ContextError(ValueError):
    pass


class ContextBackendError(RuntimeError):
    """The completion backend failed; carries the backend's message."""


@dataclass
class ContextRequest:
    book_id: str
    kind: str
    prompt: str


@dataclass
class ContextResult:
    book_id: str
    kind: str
    text: str
    backend: str
    cached: bool
    fetched_at: str


def render_prompt(kind: str, book: BookRecord) -> str:
    if kind not in KINDS:
        raise ContextError(f"unknown context kind {kind!r}")
    return _PROMPTS[kind].format(title=book.title, author=book.author, year=book.year)


def _digest_sentence(prompt: str) -> str:
    digest = hashlib.sha256(prompt.encode("utf-8")).digest()
    tone = _TONE_WORDS[digest[0] % len(_TONE_WORDS)]
    theme = _THEME_WORDS[digest[1] % len(_THEME_WORDS)]
    others = [w for w in _THEME_WORDS if w != theme]
    second = others[digest[2] % len(others)]
    return f"The tone is {tone}, circling {theme} and {second} (ref {digest[3:7].hex()})."


def mock_completion(prompt: str) -> str:
    """Deterministic stand-in for a language completion model."""
    if not prompt:
        return _FALLBACK
    if prompt.startswith(_SUMMARY_PREFIX):
        subject = prompt[len(_SUMMARY_PREFIX):].rstrip(".")
        return f"Summary of {subject}. {_digest_sentence(prompt)}"
    if prompt.startswith(_INFO_PREFIX):
        subject = prompt[len(_INFO_PREFIX):].rstrip(".")
        return f"Background on {subject}. {_digest_sentence(prompt)}"
    return f"Note on the requested work. {_digest_sentence(prompt)}"


class MockBackend:
    name = "mock"

    def __init__(self) -> None:
        self.call_count = 0

    def complete(self, prompt: str) -> str:
        self.call_count += 1
        return mock_completion(prompt)


class HttpBackend:
    """POSTs {"prompt": ...} as JSON; expects {"text": ...} back."""

    name = "http"

    def __init__(self, url: str, timeout_s: float = 10.0) -> None:
        self.url = url
        self.timeout_s = timeout_s

    def complete(self, prompt: str) -> str:
        headers = {}
        token = os.environ.get(TOKEN_ENV_VAR)
        if token:
            headers["Authorization"] = f"Bearer {token}"
        try:
            response = httpx.post(
                self.url, json={"prompt": prompt}, headers=headers, timeout=self.timeout_s
            )
        except httpx.HTTPError as exc:
            raise ContextBackendError(f"backend request failed: {exc}") from exc
        if response.status_code != 200:
            raise ContextBackendError(f"backend returned status {response.status_code}")
        try:
            text = response.json().get("text")
        except json.JSONDecodeError as exc:
            raise ContextBackendError("backend returned invalid JSON") from exc
        if not text:
            raise ContextBackendError("backend returned no text")
        return text


class ContextCache:
    """One file per (book id, kind, template version); writes are atomic
    (temp file + rename), so concurrent same-key misses degrade to
    last-writer-wins without torn reads."""

    def __init__(self, cache_dir: str | Path) -> None:
        self.dir = Path(cache_dir)
        self.dir.mkdir(parents=True, exist_ok=True)

    def _path(self, book_id: str, kind: str) -> Path:
        digest = hashlib.sha1(
            f"{book_id}:{kind}:v{TEMPLATE_VERSION}".encode("utf-8")
        ).hexdigest()
        return self.dir / f"{digest}.json"

    def get(self, book_id: str, kind: str) -> dict | None:
        path = self._path(book_id, kind)
        if not path.exists():
            return None
        try:
            return json.loads(path.read_text("utf-8"))
        except (OSError, json.JSONDecodeError):
            return None

    def put(self, book_id: str, kind: str, entry: dict) -> None:
        path = self._path(book_id, kind)
        fd, tmp = tempfile.mkstemp(dir=str(self.dir), suffix=".tmp")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as handle:
                json.dump(entry, handle, ensure_ascii=False)
            os.replace(tmp, path)
        finally:
            if os.path.exists(tmp):
                os.unlink(tmp)


def get_context(
    book: BookRecord, kind: str, backend, cache: ContextCache | None
) -> ContextResult:
    """Cached completion lookup; cache key is (book id, kind, template
    version). Backend failures propagate without touching the cache."""
    prompt = render_prompt(kind, book)
    if cache is not None:
        entry = cache.get(book.id, kind)
        if entry is not None:
            return ContextResult(
                book_id=book.id,
                kind=kind,
                text=entry["text"],
                backend=entry.get("backend", backend.name),
                cached=True,
                fetched_at=entry.get("fetched_at", ""),
            )
    text = backend.complete(prompt)
    if not text:
        raise ContextBackendError("backend returned empty text")
    fetched_at = time.strftime("%Y-%m-%dT%H:%M:%SZ", time.gmtime())
    if cache is not None:
        cache.put(
            book.id,
            kind,
            {"text": text, "backend": backend.name, "fetched_at": fetched_at},
        )
    return ContextResult(
        book_id=book.id,
        kind=kind,
        text=text,
        backend=backend.name,
        cached=False,
        fetched_at=fetched_at,
    )
