import json

import pytest

from dmpkernel import harness
from dmpkernel.cli import main


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, text in {
        "qa": "((a,b),(c,d));",
        "qb": "((a,c),(b,d));",
        "bad": "((a,b),(c,d)",
        "other": "((a,b),(c,e));",
        "chi": "a,0\nb,0\nc,1\nd,1\n",
    }.items():
        p = tmp_path / f"{name}.txt"
        p.write_text(text)
        paths[name] = str(p)
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse(capsys, files):
    code, out, _ = run(capsys, "parse", files["qa"])
    assert code == 0 and out.strip() == "((a,b),(c,d));"


def test_parse_errors(capsys, files):
    assert run(capsys, "parse", files["bad"])[0] == 2
    assert run(capsys, "parse", files["qa"] + ".missing")[0] == 2
    assert run(capsys, "no-such-command")[0] == 2


def test_score(capsys, files):
    code, out, _ = run(capsys, "score", files["qb"], files["chi"])
    assert code == 0 and out.splitlines()[0] == "2"
    code, out, _ = run(capsys, "--json", "score", files["qa"], files["chi"])
    assert json.loads(out)["score"] == 1


def test_exact_commands(capsys, files):
    code, out, _ = run(capsys, "dmp-exact", files["qa"], files["qb"], "--json")
    doc = json.loads(out)
    assert code == 0 and doc["value"] == 1 and set(doc["certificate"]["character"]) == set("abcd")
    code, out, _ = run(capsys, "dtbr-exact", files["qa"], files["qb"])
    assert out.splitlines()[0] == "1"
    code, out, _ = run(capsys, "tw-exact", files["qa"], files["qb"])
    assert out.strip() == "3"


def test_mismatched_taxa(capsys, files):
    code, _, err = run(capsys, "dmp-exact", files["qa"], files["other"])
    assert code == 2 and "LeafSetMismatch" in err


@pytest.mark.parametrize("k,rel,want", [(1, "le", "yes"), (1, "eq", "yes"), (2, "ge", "no"), (0, "le", "no")])
def test_decide(capsys, files, k, rel, want):
    code, out, _ = run(capsys, "decide", files["qa"], files["qb"], "--k", str(k), "--rel", rel)
    assert code == 0 and out.strip() == want


def test_reduce(capsys, files):
    code, out, _ = run(capsys, "--json", "reduce", files["qa"], files["qb"])
    assert code == 0 and json.loads(out)["steps"] == []


def test_dmp_approx(capsys, files):
    code, out, _ = run(capsys, "dmp-approx", files["qa"], files["qb"], "--json")
    doc = json.loads(out)
    assert code == 0 and doc["achieved"] == 1 and doc["path"] == "exact"
    assert run(capsys, "dmp-approx", files["qa"], files["qa"])[0] == 2


def test_kernel_witness_precondition(capsys, files):
    code, _, err = run(capsys, "kernel-witness", files["qa"], files["qb"], "--k", "1")
    assert code == 2 and "PreconditionViolated" in err


def test_alpha_table(capsys):
    code, out, _ = run(capsys, "alpha-table")
    assert code == 0 and "560" in out
    code, out, _ = run(capsys, "alpha-table", "--json")
    assert json.loads(out)["alpha"][2][3] == 560


def test_gen_and_seed_env(capsys, tmp_path, monkeypatch):
    monkeypatch.delenv("DMPKERNEL_SEED", raising=False)
    out1 = tmp_path / "t1.nwk"
    code, out, _ = run(capsys, "gen", "--n", "9", "--out1", str(out1), "--json")
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 20180723
    assert out1.read_text().strip() == doc["t1"]
    monkeypatch.setenv("DMPKERNEL_SEED", "42")
    _, out, _ = run(capsys, "gen", "--n", "9", "--json")
    assert json.loads(out)["seed"] == 42
    _, again, _ = run(capsys, "gen", "--n", "9", "--json")
    assert again == out


def test_suite_command(capsys):
    code, out, _ = run(capsys, "suite", "alpha-tables")
    assert code == 0 and out.startswith("PASS suite alpha-tables")
    code, out, _ = run(capsys, "suite", "fitch-vs-brute", "--scale", "0.02", "--seed", "3", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["seed"] == 3 and doc["passed"]


def test_suite_failure_exit_code(capsys, monkeypatch):
    monkeypatch.setattr(harness, "brute_parsimony", lambda tree, chi: -1)
    code, out, _ = run(capsys, "suite", "fitch-vs-brute", "--scale", "0.01")
    assert code == 1 and out.startswith("FAIL")


def test_ratio_sweep_and_tw_check(capsys, files):
    code, out, _ = run(capsys, "ratio-sweep", "--n", "5", "--samples", "5", "--seed", "1", "--json")
    doc = json.loads(out)
    assert code == 0 and 1 <= doc["outputs"]["max_ratio"] <= 1120
    code, out, _ = run(capsys, "tw-check", files["qa"], files["qb"])
    assert code == 0 and out.strip() == "tw=3 dmp=1 bound holds"
