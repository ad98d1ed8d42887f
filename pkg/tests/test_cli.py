from __future__ import annotations

import hashlib
import json
import os
import subprocess
import sys
from pathlib import Path

import pytest

from libworld.cli import main
from libworld.worldfile import canonical_json

ROOT = Path(__file__).resolve().parent.parent
DEMO = ROOT / "fixtures" / "demo" / "catalog.csv"


def run_cli(*argv: str) -> int:
    return main(list(argv))


class TestGenerate:
    def test_deterministic_across_processes(self, tmp_path):
        # Two fresh interpreters with different hash seeds stand in for two
        # machines: identical bytes prove no map-iteration dependence.
        outs = []
        for i, hash_seed in enumerate(("0", "424242")):
            out = tmp_path / f"world{i}.json"
            env = dict(os.environ, PYTHONHASHSEED=hash_seed)
            proc = subprocess.run(
                [
                    sys.executable,
                    "-m",
                    "libworld.cli",
                    "generate",
                    "--catalog",
                    str(DEMO),
                    "--out",
                    str(out),
                    "--seed",
                    "42",
                ],
                env=env,
                capture_output=True,
                text=True,
            )
            assert proc.returncode == 0, proc.stderr
            outs.append(hashlib.sha256(out.read_bytes()).hexdigest())
        assert outs[0] == outs[1]

    def test_summary_line(self, tmp_path, capsys):
        out = tmp_path / "world.json"
        assert run_cli("generate", "--catalog", str(DEMO), "--out", str(out), "--seed", "42") == 0
        summary = capsys.readouterr().out.strip()
        assert summary == "rooms=3 connections=3 books=170 bbox_area=56.0"

    def test_missing_catalog_exit_2(self, tmp_path, capsys):
        out = tmp_path / "world.json"
        code = run_cli("generate", "--catalog", "/nope/missing.csv", "--out", str(out))
        assert code == 2
        assert "/nope/missing.csv" in capsys.readouterr().err
        assert not out.exists()

    def test_bad_corridor_width_exit_2(self, tmp_path, capsys):
        out = tmp_path / "world.json"
        code = run_cli(
            "generate",
            "--catalog",
            str(DEMO),
            "--out",
            str(out),
            "--corridor-width-m",
            "0.5",
        )
        assert code == 2
        assert "corridor_width_m" in capsys.readouterr().err
        assert not out.exists()

    def test_no_partial_output_on_failure(self, tmp_path):
        bad_catalog = tmp_path / "bad.csv"
        bad_catalog.write_text(
            "id,title,author,year,category,text_uri\npg1,A,B,1900,cat,missing.txt\n"
        )
        out = tmp_path / "world.json"
        code = run_cli("generate", "--catalog", str(bad_catalog), "--out", str(out))
        assert code == 2
        assert not out.exists()
        assert not list(tmp_path.glob("*.tmp"))

    def test_config_file_with_flag_override(self, tmp_path, capsys):
        config = tmp_path / "gen.conf"
        config.write_text("seed=7\nmin-room-length-m=5.0\n# comment\n")
        out = tmp_path / "world.json"
        code = run_cli(
            "generate",
            "--catalog",
            str(DEMO),
            "--out",
            str(out),
            "--config",
            str(config),
            "--seed",
            "42",
        )
        assert code == 0
        data = json.loads(out.read_bytes())
        assert data["seed"] == 42  # flag wins
        assert data["params"]["min_room_length_m"] == 5.0  # config applies
        capsys.readouterr()


class TestValidate:
    def test_valid_catalog(self, capsys):
        assert run_cli("validate", "--catalog", str(DEMO)) == 0
        out = capsys.readouterr().out
        assert "170 books in 3 categories" in out

    def test_catalog_with_error_finding(self, tmp_path, capsys):
        path = tmp_path / "bad.csv"
        path.write_text(
            "id,title,author,year,category,text_uri\n"
            "pg1,A,B,1900,cat,bad uri with spaces\n"
        )
        assert run_cli("validate", "--catalog", str(path)) == 2
        captured = capsys.readouterr()
        assert "error" in captured.out

    def test_warning_only_passes(self, tmp_path, capsys):
        path = tmp_path / "warn.csv"
        path.write_text(
            "id,title,author,year,category,text_uri\npg1,A,B,0,cat,t.txt\n"
        )
        assert run_cli("validate", "--catalog", str(path)) == 0
        assert "warning" in capsys.readouterr().out


@pytest.fixture(scope="module")
def world_path(tmp_path_factory):
    out = tmp_path_factory.mktemp("world") / "demo.json"
    assert main(
        ["generate", "--catalog", str(DEMO), "--out", str(out), "--seed", "42"]
    ) == 0
    return out


class TestStats:
    def test_table_and_totals(self, world_path, capsys):
        assert run_cli("stats", "--world", str(world_path)) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0].split("\t") == ["room", "category", "books", "area_m2", "degree"]
        rows = [l for l in lines if l[0].isdigit()]
        assert len(rows) == 3
        assert lines[-2].startswith("total\t")
        fill = float(lines[-1].split("fill_ratio=")[1])
        assert 0.0 < fill <= 1.0

    def test_stable_column_order(self, world_path, capsys):
        run_cli("stats", "--world", str(world_path))
        first = capsys.readouterr().out
        run_cli("stats", "--world", str(world_path))
        second = capsys.readouterr().out
        assert first == second

    def test_missing_world_exit_2(self, capsys):
        assert run_cli("stats", "--world", "/nope/world.json") == 2
        capsys.readouterr()

    def test_tampered_world_duplicate_book_exit_3(self, world_path, tmp_path, capsys):
        data = json.loads(world_path.read_bytes())
        spines = [
            p for p in data["chunks"][0]["interior"] if p["kind"] == "book_spine"
        ]
        duplicated = spines[0]["book_id"]
        spines[1]["book_id"] = duplicated
        tampered = tmp_path / "tampered.json"
        tampered.write_bytes(canonical_json(data))
        assert run_cli("stats", "--world", str(tampered)) == 3
        assert duplicated in capsys.readouterr().err
