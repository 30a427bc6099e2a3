import json
import subprocess
import sys

import pytest

from cambrian.cli import run


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_documented_examples(capsys):
    assert call(capsys, "pi-c", "-q", "a2", "-w", "2 1")[:2] == (0, '{"result": "2"}\n')
    code, out, _ = call(capsys, "antisortable", "-q", "w123", "-w", "1 2 3 2")
    assert json.loads(out) == {"result": "1 2 3 2 1"}
    code, out, _ = call(capsys, "bounded", "-q", "triangle", "-w", "1 2 3 2")
    data = json.loads(out)
    assert code == 0
    assert (data["verdict"], data["witness"]) == ("Unbounded", "(1,0,1)")
    assert isinstance(data["horizon"], int)


CASES = [
    ("sortable", "a3", "1 3"),
    ("leftmost", "triangle", "1 3 2 3 1"),
    ("layers", "triangle", "1 2 3 1 2 1"),
    ("bounded", "w123", "1 2 3 2"),
    ("antisortable", "triangle", "1 2 3 2"),
    ("fiber", "a3", "1 3"),
    ("cone", "d4", "1 2 3 4 2"),
    ("removed", "triangle", "1 3 2 3 1"),
    ("torsion-pair", "a3", "1 3"),
    ("tilting", "triangle", "1 2 3 1 2 1"),
]


@pytest.mark.parametrize("cmd, quiver, word", CASES)
def test_json_output_and_determinism(capsys, cmd, quiver, word):
    first = call(capsys, cmd, "-q", quiver, "-w", word)
    second = call(capsys, cmd, "-q", quiver, "-w", word)
    assert first == second
    assert first[0] == 0
    json.loads(first[1])


def test_unbounded_results_carry_horizon(capsys):
    _, out, _ = call(capsys, "antisortable", "-q", "triangle", "-w", "1 2 3 2")
    assert json.loads(out) == {"result": None, "status": "DoesNotExist", "horizon": 68}
    code, out, _ = call(capsys, "fiber", "-q", "triangle", "-w", "1 2 3 2", "--len-bound", "6")
    data = json.loads(out)
    assert code == 0 and data["horizon"] == 6 and data["complete"] is False
    code, out, _ = call(capsys, "fiber", "-q", "triangle", "-w", "1 2 3 2")
    assert code == 1 and json.loads(out)["error"] == "CambrianError"


@pytest.mark.parametrize(
    "argv, name",
    [
        (["layers", "-q", "a2", "-w", "1 1"], "NotReducedError"),
        (["pi-c", "-q", "a2", "-w", "5"], "GeneratorIndexError"),
        (["torsion-pair", "-q", "triangle", "-w", "1"], "NotDynkinError"),
        (["cone", "-q", "a2", "-w", "2 1"], "NotSortableError"),
        (["pi-c", "-q", "1 2 / 2 1", "-w", "1"], "CycleError"),
    ],
)
def test_domain_errors(capsys, argv, name):
    code, out, err = call(capsys, *argv)
    assert code == 1
    assert json.loads(out)["error"] == name
    assert err == ""


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["pi-c", "-q", "a2"],
        ["pi-c", "-w", "1"],
        ["pi-c", "-q", "a2", "-w", "x y"],
        ["cone", "-q", "a2", "-w", "2", "--format", "dot"],
        ["selftest", "--only", "nonsense"],
        ["frobnicate"],
    ],
)
def test_usage_errors(capsys, argv):
    code, out, err = call(capsys, *argv)
    assert code == 2
    assert out == ""
    assert "usage" in err


def test_renumbering_reported(capsys):
    _, out, _ = call(capsys, "pi-c", "-q", "3 1 / 1 2", "-w", "1")
    assert json.loads(out) == {"result": "1", "renumbering": [2, 3, 1]}


def test_ar_quiver_formats(capsys):
    code, out, _ = call(capsys, "ar-quiver", "-q", "a3")
    assert code == 0 and out.startswith("digraph")
    _, out, _ = call(capsys, "ar-quiver", "-q", "a3", "--format", "json")
    assert json.loads(out)["dot"].startswith("digraph")


def test_cone_off_dump(capsys):
    code, out, _ = call(capsys, "cone", "-q", "a2", "-w", "2", "--format", "off")
    assert code == 0 and "RAYS" in out


def test_selftest_only(capsys):
    code, out, err = call(capsys, "selftest", "--only", "pi-oracle")
    data = json.loads(out)
    assert code == 0 and data["passed"]
    assert [c["name"] for c in data["criteria"]] == ["pi-oracle"]
    assert err.startswith("[PASS] pi-oracle")


def test_selftest_with_corrupted_presets(capsys, tmp_path, monkeypatch):
    bad = tmp_path / "presets.json"
    bad.write_text('{"a2": ')
    monkeypatch.setenv("CAMBRIAN_PRESETS", str(bad))
    code, out, _ = call(capsys, "selftest", "--only", "a2-cone-fiber")
    data = json.loads(out)
    assert code == 1
    assert data["criteria"][0]["name"] == "a2-cone-fiber"
    assert "JSONDecodeError" in data["criteria"][0]["detail"]


def test_module_entry_point():
    cmd = [sys.executable, "-m", "cambrian", "pi-c", "-q", "a2", "-w", "2 1"]
    runs = [subprocess.run(cmd, capture_output=True, text=True) for _ in range(2)]
    assert runs[0].returncode == 0
    assert runs[0].stdout == runs[1].stdout == '{"result": "2"}\n'
