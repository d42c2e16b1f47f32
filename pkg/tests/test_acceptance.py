"""Full-scale acceptance runs, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line (visible with
``pytest -s`` or in the captured output of ``pytest -v``) before asserting.
"""
import pytest

from dmpkernel.harness import SuiteConfig, default_seed, run_suite

CRITERIA = [
    (1, "alpha-tables", 1.0),
    (2, "fitch-vs-brute", 30.0),
    (3, "ps-lower-bound", None),
    (4, "metric-axioms", 300.0),
    (5, "reduction-invariance", None),
    (6, "lifting", None),
    (7, "glued-quartets", None),
    (8, "big-partition", None),
    (9, "tree-degrees", None),
    (10, "kernel-witness", None),
    (11, "approximation", None),
    (12, "ratio-treewidth", None),
    (13, "small-degree-bound", None),
]
PER_INSTANCE_LIMIT = 300.0  # criterion 10


@pytest.mark.acceptance
@pytest.mark.parametrize("number,suite,limit", CRITERIA, ids=[f"criterion-{n:02d}-{s}" for n, s, _ in CRITERIA])
def test_criterion(number, suite, limit, capsys):
    rep = run_suite(suite, SuiteConfig(seed=default_seed(), scale=1.0, exhaustive_n=6))
    problems = [f["check"] for f in rep.failures[:3]]
    if limit is not None and rep.timing >= limit:
        problems.append(f"took {rep.timing:.1f}s, limit {limit:.0f}s")
    if suite == "kernel-witness":
        slow = [c["seconds"] for c in rep.certificates if c["seconds"] >= PER_INSTANCE_LIMIT]
        if slow:
            problems.append(f"{len(slow)} instances over {PER_INSTANCE_LIMIT:.0f}s")
    stats = ", ".join(f"{k}={v}" for k, v in rep.outputs.items() if not isinstance(v, (dict, list)))
    status = "FAIL" if problems else "PASS"
    line = f"criterion {number}: {status} [{suite}] {rep.timing:.2f}s {stats}"
    if problems:
        line += " | " + "; ".join(problems)
    with capsys.disabled():
        print("\n" + line)
    assert not problems, line
