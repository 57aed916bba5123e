import io
import json
import time

import pytest

import forest_trees.acceptance as acceptance
import forest_trees.cli as cli
from forest_trees.cli import main, parse_sizes


def run(*argv):
    buf = io.StringIO()
    code = main(list(argv), out=buf)
    return code, buf.getvalue()


def payload(*argv):
    code, text = run(*argv)
    return code, json.loads(text) if text else None


@pytest.fixture
def instance_file(tmp_path):
    def write(text):
        path = tmp_path / "instance.json"
        path.write_text(text)
        return str(path)

    return write


def test_count_k22_one_edge(instance_file):
    path = instance_file('{"parts": [2, 2], "edges": [[[0, 0], [1, 0]]]}')
    code, data = payload("count", path)
    assert code == 0
    assert data["tau"] == "3"
    assert data["profile"] == [["1", "1"], ["1", "0"], ["0", "1"]]
    code, data = payload("count", path, "--oracle", "enumerate")
    assert code == 0 and data["oracle"] == {"method": "enumerate", "tau": "3", "match": True}


def test_count_tripartite_reports_bound(instance_file):
    path = instance_file('{"parts": [1, 1, 1], "edges": [[[0, 0], [1, 0]]]}')
    code, data = payload("count", path, "--oracle", "kirchhoff")
    assert code == 0
    assert data["tau"] == "2" and data["conjecture_rhs"] == "2"


@pytest.mark.parametrize(
    "text",
    [
        "{not json",
        '{"parts": [2, 2], "edges": [[[0, 0], [0, 1]]]}',
        '{"parts": [2, 2], "edges": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}',
        '{"parts": [2, 2], "edges": [[[0, 0], [1, 5]]]}',
        '{"parts": [1], "edges": []}',
    ],
)
def test_count_rejects_bad_input(instance_file, text):
    assert run("count", instance_file(text))[0] == 1


def test_count_missing_file(tmp_path):
    assert run("count", str(tmp_path / "missing.json"))[0] == 1


def test_count_oracle_mismatch_exits_2(instance_file, monkeypatch):
    monkeypatch.setattr(cli, "tau_forest", lambda m, n, profile: 4)
    path = instance_file('{"parts": [2, 2], "edges": [[[0, 0], [1, 0]]]}')
    code, data = payload("count", path, "--oracle", "kirchhoff")
    assert code == 2 and data["oracle"]["match"] is False


def test_phi_examples():
    assert payload("phi", "5", "7") == (0, {"k": "1", "pairs": [["5", "7"]], "phi": "1"})
    assert payload("phi", "1", "2", "3", "4")[1]["phi"] == "10"
    assert payload("phi", "1/2", "1", "1", "1/3")[0] == 0


@pytest.mark.parametrize("argv", [("--", "1", "-1", "-1", "1"), ("1", "2", "3"), ("x", "1"), ("1/0", "1")])
def test_phi_errors(argv):
    assert run("phi", *argv)[0] == 1


def test_identities_all_pass():
    code, data = payload("identities", "--ids", "all", "--sizes", "1..5", "--trials", "50", "--seed", "0")
    assert code == 0 and data["pass"] is True
    assert [r["id"] for r in data["reports"]] == list(cli.IDS)


def test_identities_zero_trials():
    code, data = payload("identities", "--ids", "L22,T31", "--trials", "0")
    assert code == 0
    assert all(r["pass"] == "0" for r in data["reports"])


@pytest.mark.parametrize("argv", [("--ids", "NOPE"), ("--sizes", "a..b"), ("--trials", "-1"), ("--sizes", "0..2")])
def test_identities_bad_arguments(argv):
    assert run("identities", *argv)[0] == 1


def test_identities_counterexample_exits_3(monkeypatch):
    import forest_trees.identities as identities

    broken = dict(identities._EVALUATORS)
    broken["L22"] = lambda v, c: (1, 2)
    monkeypatch.setattr(identities, "_EVALUATORS", broken)
    code, data = payload("identities", "--ids", "L22", "--sizes", "2", "--trials", "2")
    assert code == 3 and data["reports"][0]["fail"] == "2"


def test_conjecture_small_scan_has_equalities(tmp_path):
    out = tmp_path / "scan.jsonl"
    code, data = payload("conjecture", "--max-n", "3", "--trials", "5", "--out", str(out))
    assert code == 0
    assert data["violations"] == "0"
    assert data["k_le_2_instances"] == data["k_le_2_equalities"] != "0"
    rows = [json.loads(line) for line in out.read_text().splitlines()]
    assert len(rows) == int(data["instances"])


def test_conjecture_default_scan_is_quick():
    start = time.perf_counter()
    code, data = payload("conjecture", "--max-n", "6", "--trials", "10")
    assert code == 0
    assert time.perf_counter() - start < 60
    assert data["out"] is None


def test_conjecture_unwritable_output(tmp_path):
    assert run("conjecture", "--max-n", "3", "--out", str(tmp_path / "no" / "such" / "dir.jsonl"))[0] == 1


def test_conjecture_bad_range():
    assert run("conjecture", "--max-n", "13")[0] == 1


def test_usage_errors_exit_1():
    assert run()[0] == 1
    assert run("frobnicate")[0] == 1
    assert run("identities", "--trials", "many")[0] == 1


def test_selftest_list():
    code, data = payload("selftest", "--list")
    assert code == 0
    assert [c["name"] for c in data["checks"]] == [c.name for c in acceptance.CHECKS]


def test_selftest_single_check_passes():
    code, data = payload("selftest", "--only", "c4_moon")
    assert code == 0 and data["pass"] is True and len(data["checks"]) == 1


def test_selftest_detects_tampered_formula(monkeypatch):
    monkeypatch.setattr(acceptance, "tau_moon", lambda n, orders: 0)
    code, data = payload("selftest", "--only", "c4_moon")
    assert code == 2 and data["checks"][0]["pass"] is False


@pytest.mark.parametrize(
    "argv",
    [
        ("identities", "--ids", "L21,T31", "--sizes", "1..4", "--trials", "10", "--seed", "7"),
        ("conjecture", "--max-n", "5", "--trials", "3", "--seed", "7"),
        ("phi", "1/3", "2", "5", "-7/2"),
    ],
)
def test_output_is_byte_identical(argv):
    assert run(*argv) == run(*argv)


def test_parse_sizes():
    assert parse_sizes("1..3") == [1, 2, 3]
    assert parse_sizes("2,4, 5") == [2, 4, 5]
    assert parse_sizes("1..2,6") == [1, 2, 6]
