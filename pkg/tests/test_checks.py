import pytest

from gl2lab.checks import (
    CATALOG,
    ItemResult,
    assemble,
    merge_stats,
    plan_check,
    run_check,
    run_item,
)
from gl2lab.errors import RangeTooLarge, UnknownCheck
from gl2lab.groups import parse_group_spec
from gl2lab.orbits import Space, orbit_size_array

SPEC_IDS = ["cyc-count", "distinct-ck", "orbit-divisibility", "transitivity", "gell-orbits",
            "prop-even-degree", "antidiag-action", "eth-power-minus-one", "borel-orbits",
            "borel-ss", "twelfth-power-index", "tower-divisibility", "cns-eigenpairs",
            "ns-index-survey", "constants"]


def test_catalog_complete():
    assert set(SPEC_IDS) <= set(CATALOG)
    assert not CATALOG["ns-index-survey"].asserting


def test_errors():
    with pytest.raises(UnknownCheck):
        run_check("no-such-check")
    with pytest.raises(RangeTooLarge):
        run_check("prop-even-degree", 5, 101)
    with pytest.raises(ValueError):
        run_check("cyc-count", 11, 5)


@pytest.mark.parametrize("check_id", [c for c in SPEC_IDS if c != "constants"])
def test_small_range_passes(check_id):
    lo = CATALOG[check_id].default_range[0]
    hi = {"tower-divisibility": 6, "distinct-ck": 12}.get(check_id, 11)
    rep = run_check(check_id, lo, hi, options={"samples": 20})
    assert rep.status in ("pass", "report-only"), rep.counterexamples


def test_constants_check():
    rep = run_check("constants", options={"c": 13, "degree": 3})
    assert rep.status == "pass"
    assert rep.stats["qq_product"] == 18888870
    assert rep.stats["B"] == 30030
    assert rep.stats["large_prime_threshold"] == 74


def test_failure_witness_replays():
    """With the weaker det(G) hypothesis the even-degree claim fails, and
    every witness replays from its group spec alone."""
    rep = run_check("prop-even-degree", 5, 11, options={"full_det_on": "G"})
    assert rep.status == "fail" and rep.counterexamples
    for cex in rep.counterexamples:
        G = parse_group_spec(cex["group_spec"])
        sizes = orbit_size_array(G, Space("cyc", G.n))
        assert cex["witness"]["odd_orbit_size"] in sizes.tolist()
        assert cex["witness"]["odd_orbit_size"] % 2 == 1


def test_status_rules():
    plan = plan_check("cyc-count", 3, 5)
    bad = ItemResult()
    bad.fail(3, None, reason="synthetic")
    assert assemble(plan, [ItemResult(), bad]).status == "fail"
    assert assemble(plan, [ItemResult()]).status == "pass"
    survey = plan_check("ns-index-survey", 5, 7)
    assert assemble(survey, [bad]).status == "report-only"


def test_merge_is_order_stable():
    a = {"n": 1, "hist": {"10": 1, "2": 3}, "seen": [5]}
    b = {"n": 2, "hist": {"2": 1}, "seen": [7]}
    merged = merge_stats([a, b])
    assert merged == {"hist": {"2": 4, "10": 1}, "n": 3, "seen": [5, 7]}
    assert list(merged["hist"]) == ["2", "10"]


def test_seeded_items_are_independent_of_schedule():
    plan = plan_check("tower-divisibility", 5, 8, seed=3, options={"samples": 30})
    forward = [run_item(plan.check.id, i, plan.options) for i in plan.items]
    backward = [run_item(plan.check.id, i, plan.options) for i in reversed(plan.items)][::-1]
    assert assemble(plan, forward).as_dict() == assemble(plan, backward).as_dict()


def test_sampled_checks_record_seed():
    assert run_check("orbit-divisibility", 5, 7).seed == 0
    assert run_check("orbit-divisibility", 5, 7, seed=9).seed == 9
    assert run_check("cyc-count", 3, 7, seed=9).seed is None
