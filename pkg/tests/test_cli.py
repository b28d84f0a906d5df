import json
import math

import pytest

from enclosure import Point, compute_free_space_edges, evaluate_solution, make_walk
from enclosure.cli import run
from enclosure.instance import parse_instance, validate_and_subdivide
from conftest import opt, req, square


def _write(tmp_path, data, name="inst.json"):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


def _basic(tmp_path):
    return _write(tmp_path, {"polygons": [req("A", square(0, 0, 3))]})


def test_exit_zero_and_cost(tmp_path, capsys):
    code = run(["--input", _basic(tmp_path)])
    assert code == 0
    out = json.loads(capsys.readouterr().out)
    assert out["cost"] == pytest.approx(12.0)
    assert out["feasible"] is True
    assert len(out["walk"]) == 4


def test_exit_one_on_malformed_json(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    assert run(["--input", str(path)]) == 1
    assert "error:" in capsys.readouterr().err


def test_exit_one_on_missing_input(capsys):
    assert run([]) == 1
    assert "error:" in capsys.readouterr().err


def test_exit_two_on_infeasible_invert(tmp_path, capsys):
    # An unbounded optional region with infinite penalty can never be
    # enclosed by a bounded curve, so no finite-cost solution exists.
    path = _write(tmp_path, {
        "mode": "invert",
        "polygons": [
            opt("B", square(0, 0, 2), 1),
            {"id": "out", "kind": "optional", "penalty": "inf",
             "unbounded": True,
             "vertices": [[-9, -9], [20, -9], [20, 20], [-9, 20]]}]})
    assert run(["--input", path]) == 2
    out = json.loads(capsys.readouterr().out)
    assert out["cost"] == "inf"


def test_solver_choices_agree(tmp_path, capsys):
    path = _write(tmp_path, {"polygons": [req("A", square(0, 0, 2)),
                                          opt("B", square(4, 0, 2), 1)]})
    costs = {}
    for solver in ("dp", "dijkstra", "oracle"):
        assert run(["--input", path, "--solver", solver]) == 0
        costs[solver] = json.loads(capsys.readouterr().out)["cost"]
    assert costs["dp"] == pytest.approx(costs["dijkstra"])
    assert costs["oracle"] == pytest.approx(costs["dijkstra"])


def test_generate_flag(capsys):
    assert run(["--gen", "3,1", "--seed", "5"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["feasible"] is True and out["cost"] > 0


def test_generate_flag_bad_format(capsys):
    assert run(["--gen", "3"]) == 1
    assert "error:" in capsys.readouterr().err


def test_verify_flag_reports_checks(tmp_path, capsys):
    assert run(["--input", _basic(tmp_path), "--verify"]) == 0
    out = json.loads(capsys.readouterr().out)
    checks = out["checks"]
    assert checks["cost_matches_solver"] is True
    assert checks["weakly_simple"] is True


def test_oracle_check_flag(tmp_path, capsys):
    assert run(["--input", _basic(tmp_path), "--oracle-check"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["oracle"]["agrees"] is True
    assert out["oracle"]["exhausted"] is True


def test_debug_freespace_flag(tmp_path, capsys):
    assert run(["--input", _basic(tmp_path), "--debug-freespace"]) == 0
    out = json.loads(capsys.readouterr().out)
    fs = out["free_space"]
    assert len(fs["vertices"]) == 4 and len(fs["edges"]) == 4


def test_out_file(tmp_path, capsys):
    dest = tmp_path / "sol.json"
    assert run(["--input", _basic(tmp_path), "--out", str(dest)]) == 0
    assert capsys.readouterr().out == ""
    out = json.loads(dest.read_text())
    assert out["cost"] == pytest.approx(12.0)


def test_mode_override(tmp_path, capsys):
    path = _write(tmp_path, {"polygons": [opt("B", square(0, 0, 2), 3)]})
    assert run(["--input", path, "--mode", "invert"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["mode"] == "invert" and out["cost"] == pytest.approx(3.0)


def test_walk_round_trip(tmp_path, capsys):
    data = {"polygons": [req("A", square(0, 0, 2)), opt("B", square(5, 0, 2), 1)]}
    assert run(["--input", _write(tmp_path, data)]) == 0
    out = json.loads(capsys.readouterr().out)
    inst = validate_and_subdivide(parse_instance(data))
    walk = make_walk(inst, [Point(x, y) for x, y in out["walk"]], closed=True)
    sol = evaluate_solution(inst, walk)
    assert sol.feasible
    assert sol.cost == pytest.approx(out["cost"])


def test_svg_deterministic(tmp_path):
    a, b = tmp_path / "a.svg", tmp_path / "b.svg"
    assert run(["--input", _basic(tmp_path), "--svg", str(a)]) == 0
    assert run(["--input", _basic(tmp_path), "--svg", str(b)]) == 0
    text = a.read_text()
    assert text == b.read_text()
    assert text.startswith("<svg") or "<svg" in text
    assert "polygon" in text or "path" in text
