import json
import subprocess
import sys

import pytest

from sessionpick.cli import main

from conftest import FIXTURES

DEMO = str(FIXTURES / "demo10.csv")
THREE = str(FIXTURES / "three_channels.csv")


def run_cli(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_validate_clean(capsys):
    code, out, err = run_cli(capsys, "validate", "--input", DEMO)
    assert code == 0
    assert json.loads(out) == {"issues": []}
    assert "10 slots" in err


def test_validate_reports_error(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("channel,title,start,end,viewers\nA,x,05:00,05:00,1\n")
    code, out, err = run_cli(capsys, "validate", "--input", str(bad))
    assert code == 1
    issues = json.loads(out)["issues"]
    assert issues[0]["severity"] == "ERROR"
    assert issues[0]["slot_ids"] == ["x"]


def test_validate_warning_is_not_fatal(tmp_path, capsys):
    sched = tmp_path / "warn.csv"
    sched.write_text("channel,title,start,end,viewers\n"
                     "A,x,01:00,03:00,1\nA,y,02:00,04:00,1\n")
    code, out, err = run_cli(capsys, "validate", "--input", str(sched))
    assert code == 0
    issues = json.loads(out)["issues"]
    assert [i["severity"] for i in issues] == ["WARNING"]
    assert "WARNING" in err


def test_cliques_dump(capsys):
    code, out, _ = run_cli(capsys, "cliques", "--input", DEMO)
    assert code == 0
    payload = json.loads(out)
    assert [c["index"] for c in payload["cliques"]] == [1, 2, 3, 4, 5, 6]
    assert all(isinstance(c["leading_point"], int) for c in payload["cliques"])
    assert sorted(payload["spans"]) == [str(v) for v in range(10)]
    for span in payload["spans"].values():
        assert len(span) == 2 and 1 <= span[0] <= span[1] <= 6
    sizes = sorted(len(c["members"]) for c in payload["cliques"])
    assert sizes == [2, 2, 3, 3, 4, 4]


def test_network_json_dump(capsys):
    code, out, _ = run_cli(capsys, "network", "--input", DEMO, "--k", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["node_count"] == 7
    assert payload["k"] == 2
    assert payload["pi"] == [20, 15, 13, 7, 7, 3, 0]
    assert len(payload["arcs"]) == 16
    c_arcs = [a for a in payload["arcs"] if a["kind"] == "c_arc"]
    assert [a["capacity"] for a in c_arcs] == [2] * 6
    assert [a["weight_U"] for a in c_arcs] == [5, 2, 6, 0, 4, 3]
    for arc in payload["arcs"]:
        assert 0 <= arc["weight_U"] <= 20


def test_network_dot_dump(capsys):
    code, out, _ = run_cli(capsys, "network", "--input", DEMO, "--k", "2",
                           "--dump", "dot")
    assert code == 0
    assert out.startswith("digraph")
    assert out.rstrip().endswith("}")
    assert 'label="w=0/wU=5/cap=2"' in out  # first clique arc
    assert out.count("->") == 16


def test_solve_demo10(capsys):
    code, out, err = run_cli(capsys, "solve", "--input", DEMO, "--k", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["k"] == 2
    assert payload["total_weight"] == 34
    assert sum(s["weight"] for s in payload["sessions"]) == 34
    for session in payload["sessions"]:
        assert session["weight"] == sum(s["viewers"] for s in session["slots"])
        for slot in session["slots"]:
            assert set(slot) == {"slot_id", "channel", "title", "start", "end", "viewers"}
            assert len(slot["start"]) == 5 and slot["start"][2] == ":"
    assert "total_weight=34" in err


def test_solve_is_deterministic(capsys):
    _, first, _ = run_cli(capsys, "solve", "--input", DEMO, "--k", "2")
    _, second, _ = run_cli(capsys, "solve", "--input", DEMO, "--k", "2")
    assert first == second


def test_solve_json_input(tmp_path, capsys):
    # the same schedule converted to JSON must give the same answer
    from sessionpick import parse_schedule, serialize_schedule
    sched = parse_schedule((FIXTURES / "demo10.csv").read_text(), "csv")
    as_json = tmp_path / "demo10.json"
    as_json.write_text(serialize_schedule(sched, "json"))
    code, out, _ = run_cli(capsys, "solve", "--input", str(as_json), "--k", "2")
    assert code == 0
    assert json.loads(out)["total_weight"] == 34


def test_solve_then_check_roundtrip(tmp_path, capsys):
    solution = tmp_path / "sol.json"
    code, _, _ = run_cli(capsys, "solve", "--input", DEMO, "--k", "2",
                         "--output", str(solution))
    assert code == 0
    code, out, err = run_cli(capsys, "check", "--input", DEMO, str(solution))
    assert code == 0
    payload = json.loads(out)
    assert payload["ok"] is True
    assert payload["violations"] == []
    assert payload["total_weight"] == 34
    assert "PASS" in err


def test_check_rejects_tampered_weight(tmp_path, capsys):
    solution = tmp_path / "sol.json"
    run_cli(capsys, "solve", "--input", DEMO, "--k", "2", "--output", str(solution))
    data = json.loads(solution.read_text())
    data["sessions"][0]["weight"] += 1
    solution.write_text(json.dumps(data))
    code, out, err = run_cli(capsys, "check", "--input", DEMO, str(solution))
    assert code == 1
    payload = json.loads(out)
    assert payload["ok"] is False
    assert any("claimed weight" in v for v in payload["violations"])
    assert "FAIL" in err


def test_check_rejects_unknown_slot(tmp_path, capsys):
    solution = tmp_path / "sol.json"
    solution.write_text(json.dumps({
        "k": 2, "total_weight": 5,
        "sessions": [{"weight": 5, "slots": [
            {"slot_id": "nothere", "channel": "A", "title": "nothere",
             "start": "01:00", "end": "02:00", "viewers": 5}]}],
    }))
    code, out, _ = run_cli(capsys, "check", "--input", DEMO, str(solution))
    assert code == 1
    assert any("unknown slot id" in v for v in json.loads(out)["violations"])


def test_check_honours_explicit_k(tmp_path, capsys):
    solution = tmp_path / "sol.json"
    run_cli(capsys, "solve", "--input", DEMO, "--k", "3", "--output", str(solution))
    code, out, _ = run_cli(capsys, "check", "--input", DEMO, "--k", "2", str(solution))
    assert code == 1  # three sessions cannot satisfy a budget of two


def test_oracle_command(capsys):
    code, out, _ = run_cli(capsys, "oracle", "--input", DEMO, "--k", "2")
    assert code == 0
    payload = json.loads(out)
    assert payload["best_weight"] == 34
    assert payload["best_subset"] == ["I1", "I10", "I2", "I3", "I5", "I6", "I9"]
    assert payload["nodes_explored"] > 0


def test_oracle_refuses_large_component(tmp_path, capsys):
    rows = ["channel,title,start,end,viewers"]
    rows += [f"A,t{i},01:00,02:00,1" for i in range(21)]
    big = tmp_path / "big.csv"
    big.write_text("\n".join(rows) + "\n")
    code, _, err = run_cli(capsys, "oracle", "--input", str(big), "--k", "2")
    assert code == 1
    assert "error" in err


def test_exclude_slots(capsys):
    code, out, _ = run_cli(capsys, "solve", "--input", THREE, "--k", "3",
                           "--exclude", "A6")
    assert code == 0
    assert json.loads(out)["total_weight"] == 210


def test_exclude_unknown_slot(capsys):
    code, _, err = run_cli(capsys, "solve", "--input", THREE, "--k", "3",
                           "--exclude", "A99")
    assert code == 2
    assert "A99" in err


def test_missing_input_file(capsys):
    code, _, err = run_cli(capsys, "solve", "--input", "/no/such/file.csv", "--k", "1")
    assert code == 2
    assert "cannot read" in err


def test_malformed_csv(tmp_path, capsys):
    bad = tmp_path / "bad.csv"
    bad.write_text("totally,wrong,header\n")
    code, _, err = run_cli(capsys, "validate", "--input", str(bad))
    assert code == 1
    assert "header" in err


def test_bad_k_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--input", DEMO, "--k", "0"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_missing_k_is_usage_error(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--input", DEMO])
    assert exc.value.code == 2
    capsys.readouterr()


def test_output_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "out.json"
    code, out, _ = run_cli(capsys, "cliques", "--input", DEMO,
                           "--output", str(target))
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["cliques"]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "sessionpick", "solve", "--input", DEMO, "--k", "1"],
        capture_output=True, text=True, timeout=60)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["total_weight"] == 20
