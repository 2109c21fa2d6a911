"""Acceptance suite: criteria 1-14, each at its stated time limit.

Every test records a one-line verdict; ``conftest.py`` prints them in the
terminal summary so they appear in a plain ``pytest`` run.
"""

import subprocess
import sys
import time

import pytest

from gl2lab.checks import run_check
from gl2lab.cli import main
from gl2lab.residue import KENKU_DEGREES

VERDICTS: dict[int, str] = {}


@pytest.fixture
def criterion(request):
    num, name = request.node.get_closest_marker("criterion").args
    state = {"t0": time.perf_counter()}
    yield state
    elapsed = time.perf_counter() - state["t0"]
    failed = getattr(request.node, "rep_call", None)
    ok = failed is not None and failed.passed
    VERDICTS[num] = f"criterion {num:2d} {name:<24} {'PASS' if ok else 'FAIL'}  ({elapsed:.1f} s)"


def timed(check_id, limit, lo=None, hi=None, **kw):
    t0 = time.perf_counter()
    rep = run_check(check_id, lo, hi, **kw)
    elapsed = time.perf_counter() - t0
    assert rep.status == "pass", rep.counterexamples[:3]
    assert rep.counterexamples == []
    assert elapsed < limit, f"{check_id} took {elapsed:.1f} s, limit {limit} s"
    return rep


@pytest.mark.criterion(1, "cyc-count")
def test_c01_cyc_count(criterion):
    rep = timed("cyc-count", 5, 3, 101)
    assert rep.stats["items"] == 25


@pytest.mark.criterion(2, "distinct-ck")
def test_c02_distinct_ck(criterion):
    rep = timed("distinct-ck", 10, 2, 60)
    assert rep.stats["items"] == 59


@pytest.mark.criterion(3, "transitivity")
def test_c03_transitivity(criterion):
    rep = timed("transitivity", 60, 5, 47)
    assert rep.stats["items"] == 13


@pytest.mark.criterion(4, "gell-orbits")
def test_c04_gell_orbits(criterion):
    rep = timed("gell-orbits", 60, 5, 47)
    assert rep.stats["items"] == 13


@pytest.mark.criterion(5, "prop-even-degree")
def test_c05_prop_even_degree(criterion):
    rep = timed("prop-even-degree", 300, 5, 31)
    assert rep.params["constraints"] == ["scalars", "full-det", "not-in-cartan", "cartan-power"]
    assert rep.stats["oracle_checked"] == [5, 7, 11, 13]
    assert rep.stats["groups"] > 0


@pytest.mark.criterion(6, "antidiag-action")
def test_c06_antidiag_action(criterion):
    rep = timed("antidiag-action", 120, 5, 31)
    assert min(rep.stats["formula_cases"], rep.stats["fixed_cases"], rep.stats["orbit_cases"]) > 0


@pytest.mark.criterion(7, "eth-power-minus-one")
def test_c07_eth_power(criterion):
    rep = timed("eth-power-minus-one", 30, 2, 9999)
    assert rep.stats["items"] == 1229
    assert rep.stats["cases"] == 1229 * 8


@pytest.mark.criterion(8, "borel-orbits + borel-ss")
def test_c08_borel(criterion):
    t0 = time.perf_counter()
    timed("borel-orbits", 120, 3, 31)
    rep = timed("borel-ss", 120, 3, 31)
    assert rep.stats["oracle_checked"] == [3, 5, 7, 11, 13]
    assert time.perf_counter() - t0 < 120


@pytest.mark.criterion(9, "twelfth-power-index")
def test_c09_twelfth_power(criterion):
    timed("twelfth-power-index", 60, 5, 31)


@pytest.mark.criterion(10, "tower-divisibility")
def test_c10_tower(criterion):
    rep = timed("tower-divisibility", 300, 2, 25, seed=0, options={"samples": 500})
    assert rep.stats["exhaustive_subgroups"] > 0
    assert rep.stats["fiber_subgroups_vec"] > 0
    # 10 sampled moduli: 5..12 without 9, plus 16 and 25
    assert rep.stats["sampled_subgroups"] >= 500 * 10


@pytest.mark.criterion(11, "cns-eigenpairs")
def test_c11_cns_eigenpairs(criterion):
    timed("cns-eigenpairs", 60, 5, 31)


@pytest.mark.criterion(12, "classifier round-trip")
def test_c12_classifier(criterion):
    rep = timed("classifier-roundtrip", 180, 5, 31, options={"conjugations": 50})
    assert rep.stats["classified"] >= 50 * 6 * 9
    assert rep.stats["oracle_compared"] > 0


@pytest.mark.criterion(13, "constants")
def test_c13_constants(criterion, capsys):
    t0 = time.perf_counter()
    rep = run_check("constants")
    assert rep.status == "pass" and rep.stats["qq_product"] == 18888870
    assert main(["constants", "--c", "7"]) == 0
    out = capsys.readouterr().out
    assert "B = 210" in out
    assert "n in [1,19] u {21,25,27,37,43,67,163}" in out
    assert KENKU_DEGREES == tuple(range(1, 20)) + (21, 25, 27, 37, 43, 67, 163)
    assert str(list(KENKU_DEGREES)) in out
    assert time.perf_counter() - t0 < 1


@pytest.mark.criterion(14, "determinism")
def test_c14_determinism(criterion, tmp_path):
    outputs = []
    for run, jobs in enumerate(("1", "3", "1", "2")):
        path = tmp_path / f"r{run}.json"
        proc = subprocess.run(
            [sys.executable, "-m", "gl2lab", "verify", "tower-divisibility", "--l-min", "2",
             "--l-max", "12", "--seed", "11", "--jobs", jobs, "--out", str(path)],
            capture_output=True, text=True, timeout=300)
        assert proc.returncode == 0, proc.stderr
        outputs.append(path.read_bytes())
    assert len(set(outputs)) == 1
    stdout = {subprocess.run([sys.executable, "-m", "gl2lab", "verify", "orbit-divisibility",
                              "--l-max", "11", "--seed", "4", "--jobs", jobs],
                             capture_output=True, timeout=300).stdout for jobs in ("1", "2")}
    assert len(stdout) == 1
