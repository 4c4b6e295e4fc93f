import json
import subprocess
import sys

import pytest

from cyclic_census.cli import main
from cyclic_census.groups import build, format_cayley
from cyclic_census.specs import Dihedral


# every suite except the slow set-B sweep
GROUP_SUITES = "eq1,coprime,lambda-abelian,subquo,kernel,solbound,pgroup,noncomm,decomp,cover"


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_invariants_json_examples(capsys):
    code, out, _ = run(capsys, "invariants", "D6", "--json")
    data = json.loads(out)
    assert code == 0
    assert (data["order"], data["c"], data["lambda"]) == (12, 10, 7)
    code, out, _ = run(capsys, "invariants", "C5 x D4", "--json")
    data = json.loads(out)
    assert (data["c"], data["lambda"]) == (14, 5)
    code, out, _ = run(capsys, "invariants", "SD(3,16;2)", "--json")
    assert json.loads(out)["c"] == 11


def test_invariants_text(capsys):
    code, out, _ = run(capsys, "invariants", "Q8")
    assert code == 0
    assert "c(G)            5" in out and "lambda(G)       3" in out


def test_invariants_unsolvable_cayley_file(capsys, a5_file):
    code, out, _ = run(capsys, "invariants", f"file:{a5_file}", "--json")
    data = json.loads(out)
    assert code == 0 and data["derived_length"] == "unsolvable" and data["order"] == 60
    # A5: 1 + 15 + 10 + 6 cyclic subgroups
    assert data["c"] == 32 and data["lambda"] == 31


def test_decompose_examples(capsys):
    _, out, _ = run(capsys, "decompose", "C5 x D4", "--json")
    data = json.loads(out)
    assert data["cyclic_part"] == [[5, 1]] and data["core_order"] == 8 and data["core_c"] == 7
    _, out, _ = run(capsys, "decompose", "C60", "--json")
    data = json.loads(out)
    assert data["cyclic_part"] == [[2, 2], [3, 1], [5, 1]] and data["core_order"] == 1
    _, out, _ = run(capsys, "decompose", "SD(3,4;2)", "--json")
    data = json.loads(out)
    assert data["cyclic_part"] == [] and data["core_order"] == 12 and data["core_lambda"] == 4
    code, out, _ = run(capsys, "decompose", "C60")
    assert code == 0 and "order 60" in out


@pytest.mark.parametrize(
    "argv",
    [
        ["invariants", "D0"],
        ["invariants", "X12"],
        ["invariants", "Ab[2,3]"],
        ["invariants", "C9000"],
        ["invariants", "file:/nonexistent/table.txt"],
        ["witness", "11"],
        ["witness", "8"],
        ["catalog", "--bound", "100", "--cap", "50"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:")


def test_parse_error_message_has_column(capsys):
    code, _, err = run(capsys, "invariants", "C5 x")
    assert code == 2 and "column 5" in err


def test_bad_cayley_file_exit_2(capsys, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("order 2\n0 1\n1 7\n")
    code, _, err = run(capsys, "invariants", f"file:{path}")
    assert code == 2 and "line 3" in err


def test_argparse_usage_exit_2(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify", "--suite", "nonsense"])
    assert info.value.code == 2


def test_catalog_export(capsys):
    code, out, _ = run(capsys, "catalog", "--bound", "16")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 47 and lines[0] == "C1" and "SD(3,4;2)" in lines


def test_witness(capsys):
    code, out, _ = run(capsys, "witness", "10", "--count", "2")
    assert code == 0 and out.splitlines() == ["C2 x Ab[3,3]", "C5 x Ab[3,3]"]


def test_verify_small_bound_passes(capsys):
    code, out, _ = run(capsys, "verify", "--bound", "24", "--json", "--suite", GROUP_SUITES)
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    summary = lines[-1]
    assert summary["failed"] == 0 and summary["bound"] == 24
    assert {"eq1", "subquo", "kernel", "noncomm", "decomp", "cover", "audit"} <= set(summary["summary"])
    assert all(x["verdict"] == "holds" for x in lines[:-1])


def test_verify_json_is_deterministic(capsys):
    _, first, _ = run(capsys, "verify", "--bound", "20", "--json", "--seed", "7", "--suite", GROUP_SUITES)
    _, second, _ = run(capsys, "verify", "--bound", "20", "--json", "--seed", "7", "--suite", GROUP_SUITES)
    assert first == second


def test_verify_perturb_fails(capsys):
    code, out, _ = run(capsys, "verify", "--bound", "16", "--perturb", "--json", "--suite", GROUP_SUITES)
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 1
    failed = [x for x in lines[:-1] if x["verdict"] == "fails"]
    assert failed and all(x["bound"] == "AUDIT" for x in failed)
    assert lines[-1]["failed"] == len(failed)


def test_verify_suite_selection(capsys):
    code, out, _ = run(capsys, "verify", "--bound", "12", "--suite", "eq1,pgroup")
    assert code == 0
    assert "eq1" in out and "pgroup" in out and "subquo" not in out
    assert out.strip().endswith("all checks passed")


def test_verify_setb_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "setB", "--json")
    lines = [json.loads(x) for x in out.splitlines()]
    assert code == 0
    assert lines[-1]["summary"]["setB"]["failed"] == 0
    witnessed = {x["spec"] for x in lines[:-1] if x["bound"] == "SETB_WITNESS"}
    assert "witness(40)" in witnessed


@pytest.mark.slow
def test_verify_bound_64_all_suites(capsys):
    code, out, _ = run(capsys, "verify", "--bound", "64", "--suite", "all")
    assert code == 0
    assert out.strip().endswith("all checks passed")


def test_module_entry_point(tmp_path):
    path = tmp_path / "d4.txt"
    path.write_text(format_cayley(build(Dihedral(4))))
    res = subprocess.run(
        [sys.executable, "-m", "cyclic_census", "invariants", f"file:{path}", "--json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert res.returncode == 0
    data = json.loads(res.stdout)
    assert (data["c"], data["lambda"], data["center_order"]) == (7, 5, 2)


def test_parallel_workers_match_serial(capsys, monkeypatch):
    _, serial, _ = run(capsys, "verify", "--bound", "16", "--json", "--suite", GROUP_SUITES)
    monkeypatch.setenv("CYCLIC_CENSUS_THREADS", "2")
    _, parallel, _ = run(capsys, "verify", "--bound", "16", "--json", "--suite", GROUP_SUITES)
    assert serial == parallel
