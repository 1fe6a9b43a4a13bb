import argparse
import csv
import io
import json
from pathlib import Path

import pytest

from pixelruler.__main__ import EXIT_FAILURE, EXIT_OK, EXIT_USAGE, build_parser, run
from pixelruler.utils.properties import DEFAULT_SEED


def invoke(*argv: str) -> tuple[int, str]:
    stdout = io.StringIO()
    code = run(list(argv), stdout=stdout, setup_logging=False)
    return code, stdout.getvalue()


@pytest.fixture
def dataset(tmp_path: Path) -> Path:
    path = tmp_path / "dataset.jsonl"
    records = [
        {"id": "a", "image_width": 100, "image_height": 100, "bbox": [40, 40, 60, 60], "platform": "web"},
        {"id": "b", "image_width": 200, "image_height": 100, "bbox": [0, 0, 20, 20], "platform": "mobile"},
    ]
    for record in records:
        record["instruction"] = "press it"
    path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
    return path


def write_preds(path: Path, records: list[dict]) -> Path:
    path.write_text("".join(json.dumps(r) + "\n" for r in records), encoding="utf-8")
    return path


def test_overhead_csv() -> None:
    code, out = invoke("overhead", "--patch", "28", "--intervals", "8", "--csv")
    assert code == EXIT_OK
    rows = {row["name"]: row for row in csv.DictReader(io.StringIO(out))}
    assert rows["fhd"]["schema_version"] == "1"
    assert (rows["fhd"]["vision_count"], rows["fhd"]["ruler_count"]) == ("2691", "9")
    assert (rows["8k-uhd"]["vision_count"], rows["8k-uhd"]["ruler_count"]) == ("42625", "35")
    assert rows["8k-uhd"]["sparse"] == "false"


def test_overhead_custom_resolutions(tmp_path: Path) -> None:
    resolutions = tmp_path / "res.csv"
    resolutions.write_text("tiny,28,28\n", encoding="utf-8")
    code, out = invoke("overhead", "--resolutions", str(resolutions), "--intervals", "2,8")
    assert code == EXIT_OK
    assert "100.000%*" in out


@pytest.mark.parametrize(
    "argv",
    [
        ("overhead", "--json"),
        ("overhead", "--csv"),
        ("ruler", "--width", "1920", "--height", "1080", "--json"),
        ("assign", "--half-dim", "8", "--axes", "3", "--mode", "seq", "--csv"),
        ("attn-demo", "--grid", "8x8", "--interval", "2", "--probe", "5,5", "--json"),
        ("sequence", "--image", "56x56", "--interval", "1", "--json"),
        ("spectrum", "--dim", "16", "--csv"),
    ],
)
def test_machine_output_is_deterministic(argv: tuple[str, ...]) -> None:
    first = invoke(*argv)
    second = invoke(*argv)
    assert first[0] == EXIT_OK
    assert first == second


def test_json_schema_version() -> None:
    code, out = invoke("ruler", "--width", "364", "--height", "140", "--interval", "8", "--json")
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["schema_version"] == 1
    assert payload["command"] == "ruler"
    assert payload["arithmetic_bound"] == 224
    assert [row["face_value"] for row in payload["rows"]] == ["0", "224"]


def test_sequence_dump() -> None:
    code, out = invoke("sequence", "--system", "2", "--prompt", "1", "--image", "56x56", "--interval", "1")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "0\tsystem\t(0,0)\t<sys0>"
    assert lines[2] == "2\truler\t(2,2)\t0"
    assert lines[-1] == "9\tprompt\t(5,5)\t<tok0>"


def test_attn_demo_reports_winner() -> None:
    code, out = invoke("attn-demo", "--grid", "16x16", "--interval", "4", "--probe", "9,9", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["winner"] == 8


def test_eval(dataset: Path, tmp_path: Path) -> None:
    preds = write_preds(tmp_path / "p.jsonl", [{"id": "a", "raw_text": "x=50, y=60"}])
    code, out = invoke("eval", "--dataset", str(dataset), "--preds", str(preds), "--json")
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["accuracy"] == 0.5
    assert payload["missing_ids"] == ["b"]
    assert [row["hit"] for row in payload["rows"]] == [True, False]


def test_eval_normalized(dataset: Path, tmp_path: Path) -> None:
    preds = write_preds(tmp_path / "p.jsonl", [{"id": "a", "x": 0.5, "y": 0.5}, {"id": "b", "x": 0.05, "y": 0.1}])
    code, out = invoke("eval", "--dataset", str(dataset), "--preds", str(preds), "--normalized", "--json")
    assert code == EXIT_OK
    assert json.loads(out)["accuracy"] == 1.0


def test_eval_duplicate_predictions_fail(dataset: Path, tmp_path: Path) -> None:
    preds = write_preds(tmp_path / "p.jsonl", [{"id": "a", "x": 1, "y": 1}, {"id": "a", "x": 2, "y": 2}])
    code, out = invoke("eval", "--dataset", str(dataset), "--preds", str(preds))
    assert code == EXIT_FAILURE
    assert out == ""


def test_eval_missing_file(tmp_path: Path) -> None:
    code, _ = invoke("eval", "--dataset", str(tmp_path / "nope.jsonl"), "--preds", str(tmp_path / "p.jsonl"))
    assert code == EXIT_FAILURE


def test_sweep(dataset: Path, tmp_path: Path) -> None:
    preds_dir = tmp_path / "preds"
    preds_dir.mkdir()
    write_preds(preds_dir / "s4.jsonl", [{"id": "a", "x": 50, "y": 50}])
    write_preds(preds_dir / "s8.jsonl", [{"id": "a", "x": 50, "y": 50}, {"id": "b", "x": 10, "y": 10}])
    write_preds(preds_dir / "baseline.jsonl", [])
    code, out = invoke("sweep", "--dataset", str(dataset), "--preds-dir", str(preds_dir), "--intervals", "4,8", "--csv")
    assert code == EXIT_OK
    overall = [row for row in csv.DictReader(io.StringIO(out)) if row["platform"] == "all"]
    assert [(row["interval"], row["accuracy"]) for row in overall] == [("none", "0.0"), ("4", "0.5"), ("8", "1.0")]


def test_sweep_missing_interval_file(dataset: Path, tmp_path: Path) -> None:
    code, _ = invoke("sweep", "--dataset", str(dataset), "--preds-dir", str(tmp_path), "--intervals", "2")
    assert code == EXIT_FAILURE


def test_check_selected_properties() -> None:
    code, out = invoke("check", "--only", "spectrum-shape", "grid-ceil", "fixture-accuracy", "--json")
    payload = json.loads(out)
    assert code == EXIT_OK
    assert payload["seed"] == DEFAULT_SEED
    assert payload["failed"] == 0
    assert {row["property"] for row in payload["rows"]} == {"spectrum-shape", "grid-ceil", "fixture-accuracy"}


def test_check_seed_from_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("RULER_SEED", "7")
    assert json.loads(invoke("check", "--only", "spectrum-shape", "--json")[1])["seed"] == 7
    assert json.loads(invoke("check", "--only", "spectrum-shape", "--seed", "9", "--json")[1])["seed"] == 9


def test_check_invalid_seed_environment(monkeypatch: pytest.MonkeyPatch) -> None:
    monkeypatch.setenv("RULER_SEED", "seven")
    assert invoke("check", "--only", "spectrum-shape")[0] == EXIT_USAGE


def test_check_unknown_property() -> None:
    assert invoke("check", "--only", "no-such-property")[0] == EXIT_USAGE


@pytest.mark.parametrize(
    "argv",
    [
        (),
        ("frobnicate",),
        ("overhead", "--json", "--csv"),
        ("overhead", "--intervals", "0,8"),
        ("ruler", "--width", "100"),
        ("assign", "--half-dim", "6", "--mode", "inter", "--sections", "2,2,2", "--axes", "3"),
        ("sequence", "--width", "100"),
        ("attn-demo", "--grid", "8by8"),
        ("attn-demo", "--grid", "4x4", "--probe", "9,9"),
        ("attn-demo", "--grid", "16x8", "--probe", "2,8"),
    ],
)
def test_usage_errors(argv: tuple[str, ...]) -> None:
    assert invoke(*argv)[0] == EXIT_USAGE


def test_attn_demo_accepts_last_cell() -> None:
    assert invoke("attn-demo", "--grid", "16x8", "--probe", "15,7", "--csv")[0] == EXIT_OK


def command_names() -> list[str]:
    action = next(a for a in build_parser()._actions if isinstance(a, argparse._SubParsersAction))
    return sorted(action.choices)


@pytest.mark.parametrize("command", command_names())
def test_help_exits_cleanly(command: str, capsys: pytest.CaptureFixture[str]) -> None:
    assert invoke(command, "-h")[0] == EXIT_OK
    assert "--json" in capsys.readouterr().out
