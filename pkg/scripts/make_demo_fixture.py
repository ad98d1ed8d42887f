#!/usr/bin/env python3
"""Regenerate the committed demo fixture (catalog + sample texts).

The fixture is deterministic: running this script always reproduces the
same bytes, so the demo world's SHA-256 stays stable. Three categories
mirror the browsing tasks the system is demonstrated with: a large
classics shelf, a country category, and a small poetry shelf.
"""

from __future__ import annotations

import csv
import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
FIXTURE_DIR = ROOT / "fixtures" / "demo"
TEXT_DIR = FIXTURE_DIR / "texts"

CATEGORIES = [("Harvard Classics", 120), ("Italy", 40), ("Poetry", 10)]

FIRST_NAMES = [
    "Edmund", "Clara", "Howell", "Margaret", "Theodore", "Alice",
    "Nathaniel", "Harriet", "Silas", "Eleanor", "Ambrose", "Josephine",
]
LAST_NAMES = [
    "Whitlock", "Harrowgate", "Fenn", "Ashdown", "Mercer", "Quill",
    "Stanhope", "Beacham", "Larkfield", "Ostrander", "Pellew", "Rooke",
]
TITLE_HEADS = [
    "The Lantern", "A Treatise", "The Voyage", "Letters", "The Garden",
    "An Inquiry", "The Chronicle", "Meditations", "The Atlas", "Songs",
    "The Commerce", "A History", "The Grammar", "Sketches", "The Almanac",
]
TITLE_TAILS = [
    "of the Northern Roads", "on Patience", "to the Inner Isles",
    "from a Quiet Harbor", "of Forgotten Orchards", "into Common Error",
    "of the Salt Marshes", "for Winter Evenings", "of Small Mechanics",
    "under the Old Calendar", "of the River Towns", "concerning Glass",
    "of the Upland Farms", "toward a Modest Table", "of Borrowed Light",
]

WORDS = (
    "the a of and to in that it was on for with as his her their over "
    "under near past stone road harbor lamp winter summer letter garden "
    "market bridge chapel orchard river cellar attic window ledger miller "
    "weaver clerk captain widow tailor came went stood turned waited "
    "remembered counted carried mended opened closed promised refused "
    "morning evening quietly almost nearly barely twice once again never "
    "always seldom gray green pale worn new old narrow wide crooked"
).split()


def make_text(rng: random.Random, paragraphs: int) -> str:
    """Plain prose with lines under 72 chars and blank-line paragraph breaks."""
    out_lines: list[str] = []
    for _ in range(paragraphs):
        words_left = rng.randint(90, 150)
        line = ""
        sentence_len = 0
        while words_left > 0:
            word = rng.choice(WORDS)
            if sentence_len == 0:
                word = word.capitalize()
            sentence_len += 1
            if sentence_len >= rng.randint(8, 14):
                word += "."
                sentence_len = 0
            if len(line) + len(word) + 1 > 68:
                out_lines.append(line)
                line = word
            else:
                line = f"{line} {word}".strip()
            words_left -= 1
        if line:
            if not line.endswith("."):
                line += "."
            out_lines.append(line)
        out_lines.append("")
    return "\n".join(out_lines).rstrip("\n") + "\n"


def main() -> None:
    TEXT_DIR.mkdir(parents=True, exist_ok=True)
    rng = random.Random(20240817)

    sample_count = 6
    for i in range(sample_count):
        text = make_text(rng, paragraphs=3 + i)
        (TEXT_DIR / f"sample_{i}.txt").write_text(text, encoding="utf-8")

    rows = []
    index = 1
    for category, count in CATEGORIES:
        for _ in range(count):
            title = f"{rng.choice(TITLE_HEADS)} {rng.choice(TITLE_TAILS)}"
            author = f"{rng.choice(FIRST_NAMES)} {rng.choice(LAST_NAMES)}"
            year = rng.randint(1520, 1930)
            rows.append(
                {
                    "id": f"pg{index:04d}",
                    "title": title,
                    "author": author,
                    "year": year,
                    "category": category,
                    "text_uri": f"texts/sample_{index % sample_count}.txt",
                }
            )
            index += 1

    with (FIXTURE_DIR / "catalog.csv").open("w", newline="", encoding="utf-8") as handle:
        writer = csv.DictWriter(
            handle, fieldnames=["id", "title", "author", "year", "category", "text_uri"]
        )
        writer.writeheader()
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows and {sample_count} sample texts to {FIXTURE_DIR}")


if __name__ == "__main__":
    main()
