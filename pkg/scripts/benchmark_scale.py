#!/usr/bin/env python3
"""Measure generation and serving at catalog scale.

Builds a synthetic catalog (200 categories x 350 books = 70,000 books),
generates the world, exports it, and times chunk requests through an
in-process client. Prints one line per stage.
"""

from __future__ import annotations

import argparse
import random
import time

from fastapi.testclient import TestClient

from libworld.catalog import BookRecord, Catalog
from libworld.params import GenParams
from libworld.pipeline import build_world
from libworld.server import create_app
from libworld.worldfile import export_world, parse_world


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--categories", type=int, default=200)
    parser.add_argument("--books-per-category", type=int, default=350)
    parser.add_argument("--requests", type=int, default=50)
    args = parser.parse_args()

    books = []
    for c in range(args.categories):
        for i in range(args.books_per_category):
            idx = c * args.books_per_category + i
            books.append(
                BookRecord(
                    f"bk{idx:06d}",
                    f"Title {idx}",
                    f"Author {idx % 97}",
                    1500 + idx % 400,
                    f"category-{c:03d}",
                    "texts/shared.txt",
                )
            )
    catalog = Catalog(books=books, source_name="benchmark")
    text = "benchmark filler text able to paginate across lines\n" * 6
    texts = {b.id: text for b in books}
    print(f"catalog: {len(books)} books in {args.categories} categories")

    start = time.monotonic()
    world = build_world(catalog, GenParams(), 7, texts)
    print(f"build_world: {time.monotonic() - start:.2f}s")

    start = time.monotonic()
    payload = export_world(world)
    print(f"export: {time.monotonic() - start:.2f}s ({len(payload) / 1e6:.1f} MB)")

    start = time.monotonic()
    parsed = parse_world(payload)
    print(f"parse+validate: {time.monotonic() - start:.2f}s")

    client = TestClient(create_app(parsed, texts))
    rng = random.Random(1)
    times = []
    for _ in range(args.requests):
        rid = rng.randrange(len(parsed["layout"]["rooms"]))
        t0 = time.monotonic()
        response = client.get(f"/api/rooms/{rid}")
        times.append(time.monotonic() - t0)
        response.raise_for_status()
    times.sort()
    print(
        f"room GET over {args.requests} requests: "
        f"median {times[len(times) // 2] * 1000:.1f} ms, max {times[-1] * 1000:.1f} ms"
    )


if __name__ == "__main__":
    main()
