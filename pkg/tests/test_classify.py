import numpy as np
import pytest

from gl2lab.classify import LABEL_FAMILY, LABELS, brute_force_conjugator, classify, fixed_points, mobius
from gl2lab.errors import InvalidModulus
from gl2lab.groups import MatrixGroup, conjugate, gl2, shear_group, standard_group
from gl2lab.mat2 import Mat2, mat_inv

FAMILIES = ("Borel", "SplitCartan", "SplitNormalizer", "NonsplitCartan", "NonsplitNormalizer",
            "Gell", "Scalars")


def oracle_labels(G):
    return {lab for lab in LABELS[:-1] if brute_force_conjugator(G, lab) is not None}


def test_classify_examples():
    m = Mat2(5, 1, 1, 0, 1)
    G = conjugate(standard_group("SplitCartan", 5), m)
    cls = classify(G)
    assert "split-cartan" in cls
    c = cls.conjugators["split-cartan"]
    Cs = standard_group("SplitCartan", 5)
    assert all(mat_inv(c) @ g @ c in Cs for g in G.generators)
    assert classify(gl2(13)).labels == ("full",)
    B7 = MatrixGroup(7, list(shear_group(7).generators) + list(standard_group("SplitCartan", 7).generators))
    assert classify(B7).labels == ("borel",)
    with pytest.raises(InvalidModulus):
        classify(gl2(9))


def test_fixed_points_are_fixed():
    ell = 11
    rng = np.random.default_rng(3)
    for _ in range(200):
        a, b, c, d = (int(x) for x in rng.integers(0, ell, 4))
        m = Mat2(ell, a, b, c, d)
        if not m.is_invertible() or (b == c == 0 and a == d):
            continue
        for p in fixed_points(m):
            q = mobius(m, p)
            assert (p is None and q is None) or (p is not None and q == p)


@pytest.mark.parametrize("ell", [5, 7, 11, 13])
@pytest.mark.parametrize("family", FAMILIES)
def test_labels_agree_with_oracle(family, ell):
    rng = np.random.default_rng(ell)
    base = standard_group(family, ell)
    groups = [base]
    while len(groups) < 3:
        m = Mat2(ell, *(int(x) for x in rng.integers(0, ell, 4)))
        if m.is_invertible():
            groups.append(conjugate(base, m))
    for G in groups:
        cls = classify(G)
        assert set(cls.labels) - {"full"} == oracle_labels(G)
        for lab, c in cls.conjugators.items():
            target = standard_group(LABEL_FAMILY[lab], ell)
            assert all(mat_inv(c) @ g @ c in target for g in G.generators)


def test_small_groups_agree_with_oracle():
    ell = 7
    specs = [[Mat2(ell, 0, 1, 1, 0)], [Mat2(ell, 1, 1, 0, 1)], [Mat2(ell, 2, 0, 0, 2)],
             [Mat2(ell, 0, 1, 6, 0)], [Mat2(ell, 1, 0, 0, 6), Mat2(ell, 0, 1, 1, 0)],
             [Mat2(ell, 0, 3, 1, 0)]]
    for gens in specs:
        G = MatrixGroup(ell, gens)
        assert set(classify(G).labels) - {"full"} == oracle_labels(G)
