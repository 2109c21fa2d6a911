import json

import pytest

from gl2lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_orbits_borel(capsys):
    code, out, _ = run(capsys, "orbits", "B(7)", "--space", "cyc")
    assert code == 0
    assert "orbit sizes: [1, 7]" in out


def test_orbits_vec_with_order(capsys):
    code, out, _ = run(capsys, "orbits", "GL2(9)", "--space", "vec", "--order", "3")
    assert code == 0 and "orbit sizes: [8]" in out
    code, _, err = run(capsys, "orbits", "GL2(9)", "--order", "2")
    assert code == 2 and "does not divide" in err


def test_constants(capsys):
    code, out, _ = run(capsys, "constants", "--c", "7")
    assert code == 0
    assert "B = 210" in out
    assert "= 18888870" in out
    assert "n in [1,19] u {21,25,27,37,43,67,163}" in out


def test_group_describe(capsys):
    code, out, _ = run(capsys, "group", "describe", "Ns(7)")
    assert code == 0
    assert "order: 72" in out
    assert "split-normalizer" in out
    assert "minimal e: 1" in out


def test_verify_exit_codes(capsys, tmp_path):
    code, out, _ = run(capsys, "verify", "cyc-count", "--l-min", "3", "--l-max", "101")
    assert code == 0 and json.loads(out)["status"] == "pass"
    code, _, _ = run(capsys, "verify", "prop-even-degree", "--l-max", "7",
                     "--option", "full_det_on=G", "--out", str(tmp_path / "f.json"))
    assert code == 1
    rep = json.loads((tmp_path / "f.json").read_text())
    spec = rep["counterexamples"][0]["group_spec"]
    code, out, _ = run(capsys, "orbits", spec)
    assert code == 0 and f"size {rep['counterexamples'][0]['witness']['odd_orbit_size']}:" in out


@pytest.mark.parametrize("argv", [
    ["verify", "nope"],
    ["verify", "cyc-count", "--l-max", "99999"],
    ["verify", "cyc-count", "--jobs", "0"],
    ["orbits", "Foo(7)"],
    ["census", "ns", "--l", "9"],
    ["frobnicate"],
    [],
])
def test_usage_errors_exit_2(capsys, argv):
    assert main(argv) == 2


def test_census_command(capsys, tmp_path):
    code, out, _ = run(capsys, "census", "borel", "--l", "5", "--no-cache")
    assert code == 0 and out.startswith("non-diagonalizable subgroups of B(5): 15")
    code, out, _ = run(capsys, "census", "ns", "--l", "5", "--constraints", "all", "--list",
                       "--cache-dir", str(tmp_path))
    assert code == 0 and ": 1\n" in out and "order 32" in out


def test_verify_deterministic_across_jobs(capsys, tmp_path):
    outs = []
    for jobs in ("1", "2"):
        path = tmp_path / f"r{jobs}.json"
        assert main(["verify", "orbit-divisibility", "--l-max", "11", "--seed", "5",
                     "--jobs", jobs, "--out", str(path)]) == 0
        outs.append(path.read_bytes())
    capsys.readouterr()
    assert outs[0] == outs[1]
