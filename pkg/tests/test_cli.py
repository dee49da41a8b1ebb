import json
import shutil
from pathlib import Path

import pytest

from symplabic import lie
from symplabic.cli import main, matrix_to_json
from symplabic.plabic import from_json

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_meas_of_the_cycle_network(capsys):
    code, out, _ = run(capsys, "meas", str(DATA / "cycle_network.json"))
    assert code == 0
    assert json.loads(out) == {"n": 2, "entries": [["1/2", "1/2"], ["1/2", "1/2"]]}


def test_check_ms_exit_codes(capsys):
    assert run(capsys, "check-ms", str(DATA / "orthogonal_square.json"))[:2] == (0, "yes\n")
    assert run(capsys, "check-ms", str(DATA / "cycle_network.json"))[:2] == (1, "no\n")


def test_weyl_statistics(capsys):
    code, out, _ = run(capsys, "weyl", "--n", "4", "--perm", "3 4 1 2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "inv=4 neg=2 length=3"
    assert lines[1].startswith("word=")


def test_domain_errors_go_to_stderr_as_json(capsys):
    code, out, err = run(capsys, "weyl", "--n", "4", "--perm", "2 1 3 4")
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "NotCentralizing"
    code, _out, err = run(capsys, "cell", "--type", "C", "--rank", "2", "--word", "1 -2 1")
    assert code == 1
    assert json.loads(err)["error"] == "NotReduced"


def test_usage_errors_exit_with_two(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["cell", "--type", "D", "--rank", "2", "--word", "1"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_move_writes_a_valid_graph(tmp_path, capsys):
    path = tmp_path / "g.json"
    shutil.copy(DATA / "orthogonal_square.json", path)
    g, _net, _fw = from_json(json.loads(path.read_text()))
    square = next(f.id for f in g.faces() if f.touches_midline and not f.is_top and not f.is_bottom)
    before = run(capsys, "meas", str(path))[1]
    assert run(capsys, "move", str(path), "--face", square)[0] == 0
    g2, _net, fw2 = from_json(json.loads(path.read_text()))
    assert g2.color != g.color and fw2 is not None
    assert run(capsys, "meas", str(path))[1] == before


def test_move_rejects_non_square_faces(capsys):
    code, _out, err = run(capsys, "move", str(DATA / "square.json"), "--face", "nope", "--output", "-")
    assert code == 1
    assert "error" in json.loads(err)


def test_sigma_fixes_a_symmetric_weighting(capsys):
    path = DATA / "orthogonal_square.json"
    code, out, _ = run(capsys, "sigma", str(path))
    assert code == 0
    assert json.loads(out) == json.loads(path.read_text())["face_weights"]


def test_quiver_modes(capsys):
    code, out, _ = run(capsys, "quiver", "--fold", str(DATA / "ladder.json"))
    assert code == 0
    spec = json.loads(out)
    assert sorted(spec["relation"].values()) == [1, 1, 1, 2, 2, 2, 2]
    code, out, _ = run(capsys, "quiver", "--average", str(DATA / "double_square.json"))
    assert code == 0
    code, _out, err = run(capsys, "quiver", "--fold", str(DATA / "double_square.json"))
    assert code == 1 and json.loads(err)["error"] == "OddValency"


def test_cell_and_dot(tmp_path, capsys):
    dot = tmp_path / "cell.dot"
    code, out, _ = run(capsys, "cell", "--type", "B", "--rank", "1", "--word", "1", "--params", "2 3", "--dot", str(dot))
    assert code == 0
    obj = json.loads(out)
    assert obj["word"] == [1] and obj["parameters"] == ["2", "3"]
    assert obj["chart"]["n"] == 3
    assert dot.read_text().startswith("graph plabic {")


def test_tnn_on_matrices(tmp_path, capsys):
    code, out, _ = run(capsys, "tnn", str(DATA / "short_root_b1.json"))
    assert code == 0
    first, rest = out.split("\n", 1)
    assert first == "yes"
    assert json.loads(rest)["upper"] == [[1, "1"]]
    bad = tmp_path / "bad.json"
    neg = lie.x_elem(lie.GroupContext("C", 1), 1, -1)
    bad.write_text(json.dumps(matrix_to_json(neg)))
    assert run(capsys, "tnn", str(bad))[:2] == (0, "no\n")


def test_quiver_dot_marks_half_edges(capsys):
    code, out, _ = run(capsys, "export-dot", "--quiver", str(DATA / "square.json"))
    assert code == 0
    assert out.count("style=dashed") == 4
    assert out.count("->") == 8


def test_output_is_deterministic(capsys):
    for argv in (["meas", str(DATA / "ladder.json")],
                 ["quiver", "--average", str(DATA / "orthogonal_square.json")],
                 ["cell", "--type", "C", "--rank", "2", "--word", "1 -2 2"]):
        assert run(capsys, *argv)[1] == run(capsys, *argv)[1]


def test_missing_file(capsys):
    code, _out, err = run(capsys, "meas", "/nonexistent/graph.json")
    assert code == 1 and json.loads(err)["error"] == "ParseError"


def test_verify_single_criterion(capsys):
    code, out, _ = run(capsys, "verify", "--only", "1", "8")
    assert code == 0
    assert [line[:6] for line in out.splitlines()] == ["[PASS]", "[PASS]"]
