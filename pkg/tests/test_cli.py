import csv
import io
import json

import pytest
from click.testing import CliRunner

from torusjones.cli import main
from torusjones import catalog


@pytest.fixture
def run():
    runner = CliRunner()

    def invoke(*args):
        return runner.invoke(main, list(args))

    return invoke


def test_invariant_text(run):
    res = run("invariant", "--link", "W", "--n", "3")
    assert res.exit_code == 0, res.output
    assert res.output.splitlines()[1].split()[1] == "198"


def test_invariant_json(run):
    res = run("invariant", "--link", "unknot", "--n", "4", "--r", "4", "--format", "json")
    record = json.loads(res.output)
    assert record["abs"] < 1e-12
    assert record["flavor"] == "sl2_jones"


def test_invariant_csv_with_colors(run):
    res = run("invariant", "--link", "B", "--r", "7", "--flavor", "sl2-multi", "--colors", "2,3", "--format", "csv")
    assert res.exit_code == 0, res.output
    row = next(csv.DictReader(io.StringIO(res.output)))
    assert row["flavor"] == "sl2_multi"


def test_invariant_su2(run):
    res = run("invariant", "--link", "loop_1_0", "--n", "5", "--r", "7", "--flavor", "su2", "--format", "json")
    assert json.loads(res.output)["real"] == pytest.approx(5)


def test_invariant_from_file(run, tmp_path):
    path = tmp_path / "w.json"
    path.write_text(json.dumps(catalog.get("W").diagram.to_json()))
    a = run("invariant", "--diagram", str(path), "--n", "3", "--format", "json")
    b = run("invariant", "--link", "W", "--n", "3", "--format", "json")
    assert a.exit_code == 0, a.output
    assert json.loads(a.output) == json.loads(b.output)


@pytest.mark.parametrize(
    "args",
    [
        ("invariant", "--link", "nope"),
        ("invariant",),
        ("invariant", "--link", "W", "--diagram", "x.json"),
        ("invariant", "--link", "W", "--n", "5", "--r", "3"),
        ("invariant", "--link", "B", "--colors", "2", "--flavor", "sl2-multi", "--r", "5"),
        ("invariant", "--link", "B", "--colors", "a,b"),
        ("table", "--links", "nope"),
        ("table", "--threads", "0"),
        ("converge", "--link", "nope"),
        ("verify", "--only", "nope"),
    ],
)
def test_input_errors_exit_2(run, args):
    assert run(*args).exit_code == 2


def test_bad_diagram_file_exits_2(run, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"nodes": [], "edges": [], "extra": 1}')
    assert run("invariant", "--diagram", str(path)).exit_code == 2


def test_resource_cap_exits_3(run):
    res = run("invariant", "--link", "W", "--n", "3", "--max-tensor-entries", "10")
    assert res.exit_code == 3


def test_table_columns_and_values(run):
    res = run("table", "--links", "ell", "--n", "10")
    assert res.exit_code == 0, res.output
    rows = list(csv.DictReader(io.StringIO(res.output)))
    assert list(rows[0]) == ["link", "n", "normalized_log", "volume", "target"]
    assert float(rows[0]["normalized_log"]) == pytest.approx(9.5569, abs=1e-3)
    assert rows[0]["target"] == "9.5569"


def test_table_is_deterministic_across_threads(run):
    one = run("table", "--n", "6,8", "--threads", "1")
    four = run("table", "--n", "6,8", "--threads", "4")
    assert one.exit_code == four.exit_code == 0
    assert one.output.encode() == four.output.encode()


def test_converge_weave(run):
    res = run("converge", "--n", "20,40")
    rows = list(csv.DictReader(io.StringIO(res.output)))
    assert [r["n"] for r in rows] == ["20", "40"]


def test_converge_other_link_warns_on_cap():
    res = CliRunner().invoke(main, ["converge", "--link", "B", "--n", "5,6", "--max-tensor-entries", "10"])
    assert res.exit_code == 0
    assert "warning" in res.stderr


def test_verify_subset(run):
    res = run("verify", "--only", "rmatrix,operators")
    assert res.exit_code == 0, res.output
    assert res.output.strip().endswith("checks passed")
    assert "FAIL" not in res.output


def test_version(run):
    assert run("--version").exit_code == 0
