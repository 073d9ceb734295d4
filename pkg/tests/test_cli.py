from __future__ import annotations

import json
from pathlib import Path

import pytest

import ystraight.cli.main as cli
from ystraight.cli.main import EXIT_FAILED, EXIT_INPUT, EXIT_INTERNAL, EXIT_OK, main
from ystraight.models.drawing import PolylineDrawing
from ystraight.models.errors import NonSimplePolygon
from ystraight.services.validate import validate
from ystraight.utils.serialization import load_document


def _write(path: Path, doc: dict[str, object]) -> Path:
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def test_generate_straighten_verify(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    original = tmp_path / "bad.json"
    result = tmp_path / "straight.json"
    picture = tmp_path / "straight.svg"
    assert main(["gen", "bad", "--d", "3", "-o", str(original)]) == EXIT_OK
    assert (
        main(["straighten", str(original), str(result), "--integerize", "--svg", str(picture)])
        == EXIT_OK
    )
    assert picture.read_text(encoding="utf-8").startswith("<?xml")
    straight = load_document(result)
    assert validate(straight).ok  # type: ignore[arg-type]

    capsys.readouterr()
    assert main(["verify", str(original), str(result)]) == EXIT_OK
    assert capsys.readouterr().out.strip().endswith("verified")


def test_straighten_to_stdout(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    src = tmp_path / "random.json"
    assert main(["gen", "random", "--n", "8", "--seed", "3", "-o", str(src)]) == EXIT_OK
    assert main(["straighten", str(src)]) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert all(e["bends"] == [] for e in doc["edges"])


def test_verify_detects_moved_row(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    a = _write(
        tmp_path / "a.json",
        {"vertices": [{"id": "p", "x": 0, "y": 0}, {"id": "q", "x": 1, "y": 1}],
         "edges": [{"u": "p", "v": "q"}]},
    )
    b = _write(
        tmp_path / "b.json",
        {"vertices": [{"id": "p", "x": 0, "y": 0}, {"id": "q", "x": 1, "y": 2}],
         "edges": [{"u": "p", "v": "q"}]},
    )
    assert main(["verify", str(a), str(b)]) == EXIT_FAILED
    out = capsys.readouterr().out
    assert "rows changed for ['q']" in out


def test_validate_reports_crossing(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _write(
        tmp_path / "x.json",
        {
            "vertices": [
                {"id": "a", "x": 0, "y": 0},
                {"id": "b", "x": 2, "y": 2},
                {"id": "c", "x": 0, "y": 2},
                {"id": "d", "x": 2, "y": 0},
            ],
            "edges": [{"u": "a", "v": "b"}, {"u": "c", "v": "d"}],
        },
    )
    assert main(["validate", str(path)]) == EXIT_FAILED
    out = capsys.readouterr().out
    assert out.startswith("crossing: a-b, c-d")
    assert "invalid (1 issues)" in out


def test_straighten_rejects_non_monotone(
    tmp_path: Path, capsys: pytest.CaptureFixture[str]
) -> None:
    src = tmp_path / "nonmono.json"
    assert main(["gen", "nonmono", "-o", str(src)]) == EXIT_OK
    assert main(["straighten", str(src)]) == EXIT_INPUT
    assert "not y-monotone" in capsys.readouterr().err


def test_malformed_json(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = tmp_path / "broken.json"
    path.write_text('{"vertices": [', encoding="utf-8")
    assert main(["validate", str(path)]) == EXIT_INPUT
    assert "line 1" in capsys.readouterr().err


def test_missing_file(tmp_path: Path) -> None:
    assert main(["validate", str(tmp_path / "nope.json")]) == EXIT_INPUT


def test_fvr_input_is_converted(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    path = _write(
        tmp_path / "fvr.json",
        {
            "vertices": [
                {"id": "a", "xl": 0, "xr": 2, "y": 1},
                {"id": "b", "xl": 1, "xr": 3, "y": 2},
            ],
            "edges": [{"u": "a", "v": "b", "orient": "v", "at": "3/2"}],
        },
    )
    assert main(["validate", str(path)]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "valid"


def test_bound(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["bound", "--n", "5"]) == EXIT_OK
    assert capsys.readouterr().out.strip() == "n=5 width >= 16/3 (= 5.33)"


def test_bound_rejects_bad_n(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["bound", "--n", "10", "--stacked"]) == EXIT_INPUT
    assert capsys.readouterr().err.startswith("error:")


def test_bound_check(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["bound", "--n", "5", "--check"]) == EXIT_OK
    assert "straightened width=" in capsys.readouterr().out


def test_legacy_demo(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["legacy", "demo"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "legacy placement: 0 crossing(s)" not in out
    assert "row-preserving straightening: valid=True" in out
    assert "processing orders tried: 720, trace-preserving: 0" in out


@pytest.mark.parametrize(
    "command,target",
    [("straighten", "straighten"), ("triangulate", "triangulate_drawing")],
)
def test_geometry_failure_inside_algorithm_is_internal(
    command: str,
    target: str,
    tmp_path: Path,
    monkeypatch: pytest.MonkeyPatch,
    capsys: pytest.CaptureFixture[str],
) -> None:
    src = tmp_path / "random.json"
    assert main(["gen", "random", "--n", "8", "--seed", "3", "-o", str(src)]) == EXIT_OK

    def broken(d: PolylineDrawing) -> PolylineDrawing:
        raise NonSimplePolygon("face polygon touches itself")

    monkeypatch.setattr(cli, target, broken)
    assert main([command, str(src)]) == EXIT_INTERNAL
    assert "face polygon touches itself" in capsys.readouterr().err
