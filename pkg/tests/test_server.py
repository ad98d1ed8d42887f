from __future__ import annotations

import json

import pytest
from fastapi.testclient import TestClient
from hypothesis import given, settings
from hypothesis import strategies as st

from libworld.catalog import normalize_text
from libworld.server import ServeConfig, create_app, paginate_text
from libworld.worldfile import export_world, parse_world


class TestPaginateText:
    def test_sixty_char_lines_split_cleanly(self):
        line = "x" * 59 + "\n"
        text = line * 60  # 3600 chars
        pages = paginate_text(text, 1800)
        assert [len(p.text) for p in pages] == [1800, 1800]
        assert "".join(p.text for p in pages) == text

    def test_empty_text_single_empty_page(self):
        pages = paginate_text("", 1800)
        assert len(pages) == 1
        assert pages[0].text == ""
        assert pages[0].total_pages == 1

    def test_hard_split_single_line(self):
        text = "a" * 5000
        pages = paginate_text(text, 1800)
        assert [len(p.text) for p in pages] == [1800, 1800, 1400]

    def test_breaks_at_whitespace_when_no_newline(self):
        text = ("word " * 1000).strip()
        pages = paginate_text(text, 1800)
        for page in pages[:-1]:
            assert page.text.endswith(" ")
        assert "".join(p.text for p in pages) == text

    def test_indices_and_totals(self):
        pages = paginate_text("a" * 4000, 1800)
        assert [p.index for p in pages] == [0, 1, 2]
        assert all(p.total_pages == 3 for p in pages)

    def test_invalid_page_size(self):
        with pytest.raises(ValueError):
            paginate_text("abc", 0)

    @settings(max_examples=80, deadline=None)
    @given(
        text=st.text(st.characters(blacklist_categories=("Cs",)), max_size=20_000),
        chars=st.integers(min_value=1, max_value=3000),
    )
    def test_round_trip_property(self, text, chars):
        normalized = normalize_text(text)
        pages = paginate_text(normalized, chars)
        assert "".join(p.text for p in pages) == normalized
        for page in pages:
            assert len(page.text) <= chars
        if normalized:
            assert all(p.text for p in pages)


@pytest.fixture(scope="module")
def client(demo_world, demo_texts):
    world = parse_world(export_world(demo_world))
    return TestClient(create_app(world, demo_texts))


class TestEndpoints:
    def test_healthz(self, client):
        response = client.get("/healthz")
        assert response.status_code == 200
        assert response.json() == {"status": "ok"}

    def test_layout(self, client):
        body = client.get("/api/layout").json()
        assert len(body["rooms"]) == 3
        assert len(body["connections"]) == 3
        assert len(body["bbox"]) == 4

    def test_map_includes_signboards(self, client):
        body = client.get("/api/map").json()
        assert {"rooms", "doors", "teleports", "category_index", "signboards"} <= set(body)
        assert len(body["teleports"]) == 3

    def test_room_chunk(self, client):
        body = client.get("/api/rooms/0").json()
        assert body["room_id"] == 0
        kinds = {p["kind"] for p in body["structure"]}
        assert {"floor", "ceiling", "wall", "light", "door_sign"} <= kinds

    def test_unknown_room_404(self, client):
        response = client.get("/api/rooms/9999")
        assert response.status_code == 404
        assert "error" in response.json()

    def test_malformed_room_id_400(self, client):
        assert client.get("/api/rooms/abc").status_code == 400

    def test_visible_mirrors_layout(self, client):
        layout = client.get("/api/layout").json()
        neighbors = {r["id"]: set() for r in layout["rooms"]}
        for conn in layout["connections"]:
            neighbors[conn["room_a"]].add(conn["room_b"])
            neighbors[conn["room_b"]].add(conn["room_a"])
        for room in layout["rooms"]:
            rid = room["id"]
            body = client.get(f"/api/rooms/{rid}/visible").json()
            assert body["current"] == rid
            assert set(body["structure"]) == {rid} | neighbors[rid]
            assert body["interior"] == [rid]

    def test_visible_unknown_404(self, client):
        assert client.get("/api/rooms/77/visible").status_code == 404

    def test_book_metadata_fields(self, client):
        body = client.get("/api/books/pg0001").json()
        assert {"title", "author", "year", "category"} <= set(body)
        assert body["room_id"] == 0
        assert body["total_pages"] >= 1

    def test_unknown_book_404(self, client):
        assert client.get("/api/books/nope").status_code == 404

    def test_pages_round_trip(self, client, demo_texts):
        meta = client.get("/api/books/pg0001").json()
        joined = ""
        for index in range(meta["total_pages"]):
            page = client.get(f"/api/books/pg0001/pages/{index}").json()
            assert page["index"] == index
            joined += page["text"]
        assert joined == demo_texts["pg0001"]

    def test_page_out_of_range_404(self, client):
        meta = client.get("/api/books/pg0001").json()
        total = meta["total_pages"]
        assert client.get(f"/api/books/pg0001/pages/{total}").status_code == 404
        assert client.get("/api/books/pg0001/pages/-1").status_code == 404

    def test_context_summary(self, client):
        body = client.get("/api/books/pg0001/context?kind=summary").json()
        assert body["kind"] == "summary"
        assert body["text"].startswith("Summary of")
        assert body["backend"] == "mock"

    def test_context_bad_kind_400(self, client):
        assert client.get("/api/books/pg0001/context?kind=zzz").status_code == 400
        assert client.get("/api/books/pg0001/context").status_code == 400

    def test_search_by_title_substring(self, client):
        hits = client.get("/api/search?q=voyage").json()["matches"]
        assert hits
        for hit in hits:
            assert "voyage" in hit["title"].lower() or "voyage" in hit["category"].lower()
            assert set(hit) == {"book_id", "title", "category", "room_id"}

    def test_search_by_category(self, client):
        hits = client.get("/api/search?category=poetry").json()["matches"]
        assert len(hits) == 10
        assert all(h["category"] == "Poetry" for h in hits)

    def test_search_case_insensitive(self, client):
        a = client.get("/api/search?q=VOYAGE").json()["matches"]
        b = client.get("/api/search?q=voyage").json()["matches"]
        assert a == b

    def test_search_requires_a_parameter(self, client):
        assert client.get("/api/search").status_code == 400

    def test_statelessness(self, client):
        for path in (
            "/api/layout",
            "/api/map",
            "/api/rooms/1",
            "/api/rooms/1/visible",
            "/api/books/pg0001",
            "/api/books/pg0001/pages/0",
            "/api/search?q=the",
        ):
            first = client.get(path)
            second = client.get(path)
            assert first.content == second.content, path

    def test_context_stable_after_first_fetch(self, client):
        first = client.get("/api/books/pg0002/context?kind=summary")
        second = client.get("/api/books/pg0002/context?kind=summary")
        third = client.get("/api/books/pg0002/context?kind=summary")
        assert second.content == third.content
        a, b = first.json(), second.json()
        assert a["text"] == b["text"]
        assert a["fetched_at"] == b["fetched_at"]
        assert (a["cached"], b["cached"]) == (False, True)

    def test_every_layout_room_fetchable(self, client):
        layout = client.get("/api/layout").json()
        for room in layout["rooms"]:
            assert client.get(f"/api/rooms/{room['id']}").status_code == 200

    def test_backend_failure_502_with_placeholder(self, demo_world, demo_texts):
        world = parse_world(export_world(demo_world))
        config = ServeConfig(context_backend="http", context_url="http://127.0.0.1:1/dead")
        broken = TestClient(create_app(world, demo_texts, config))
        response = broken.get("/api/books/pg0001/context?kind=summary")
        assert response.status_code == 502
        body = response.json()
        assert "error" in body and body["text"]


class TestConcurrency:
    def test_parallel_mixed_requests_stay_consistent(self, client):
        from concurrent.futures import ThreadPoolExecutor

        paths = [
            "/api/layout",
            "/api/map",
            "/api/rooms/0",
            "/api/rooms/1/visible",
            "/api/books/pg0001",
            "/api/books/pg0001/pages/0",
            "/api/search?q=the",
            "/api/books/pg0003/context?kind=additional_info",
        ] * 5
        baseline = {p: client.get(p).content for p in set(paths) if "context" not in p}
        with ThreadPoolExecutor(max_workers=8) as pool:
            results = list(pool.map(lambda p: (p, client.get(p)), paths))
        for path, response in results:
            assert response.status_code == 200, path
            if "context" not in path:
                assert response.content == baseline[path], path
