import numpy as np
import pytest

from gl2lab.errors import (
    InvalidModulus,
    MismatchedModulus,
    NotASubgroup,
    NotInBorel,
    SingularMatrix,
    SpecSyntaxError,
    UnsupportedFamily,
)
from gl2lab.groups import (
    FAMILIES,
    MatrixGroup,
    closure,
    conjugate,
    det_image,
    gl2,
    index,
    minimal_cartan_power,
    parse_group_spec,
    semisimplify_borel,
    shear_group,
    standard_group,
)
from gl2lab.mat2 import Mat2, gl2_order, mat_inv
from gl2lab.residue import least_generator

ORDERS = {
    "Borel": lambda l: l * (l - 1) ** 2,
    "SplitCartan": lambda l: (l - 1) ** 2,
    "SplitNormalizer": lambda l: 2 * (l - 1) ** 2,
    "NonsplitCartan": lambda l: l * l - 1,
    "NonsplitNormalizer": lambda l: 2 * (l * l - 1),
    "Gell": lambda l: 2 * (l * l - 1) // 3,
    "Scalars": lambda l: l - 1,
    "GL2": gl2_order,
}


@pytest.mark.parametrize("ell", [5, 7, 11])
@pytest.mark.parametrize("family", sorted(ORDERS))
def test_family_factory_matches_closure(family, ell):
    G = standard_group(family, ell)
    assert G.order == ORDERS[family](ell)
    if family != "GL2":
        closed = closure(G.generators, ell)
        assert np.array_equal(closed.elements, G.elements)
        assert G.contains_codes(closed.elements).all()


def test_families_listed():
    assert set(ORDERS) <= set(FAMILIES)


def test_closure_examples():
    assert closure([], 7).order == 1
    assert closure([Mat2(13, 1, 1, 0, 1)]).order == 13
    g = least_generator(11)
    assert closure([Mat2.diag(g, 1, 11), Mat2.diag(1, g, 11)]).order == 100
    with pytest.raises(SingularMatrix):
        MatrixGroup(5, [Mat2(5, 1, 1, 1, 1)])


def test_standard_group_errors():
    with pytest.raises(UnsupportedFamily):
        standard_group("Gell", 3)
    with pytest.raises(UnsupportedFamily):
        standard_group("Nonsense", 7)
    with pytest.raises(InvalidModulus):
        standard_group("Borel", 9)


def test_index_examples():
    ell = 7
    Ns, Cs = standard_group("SplitNormalizer", ell), standard_group("SplitCartan", ell)
    assert index(Cs, Cs) == 1
    assert index(Ns, Cs) == 2
    assert index(standard_group("NonsplitNormalizer", ell), standard_group("Gell", ell)) == 3
    U = shear_group(5)
    Z = standard_group("Scalars", 5)
    assert index(standard_group("Borel", 5), MatrixGroup(5, U.generators + Z.generators)) == 4
    with pytest.raises(NotASubgroup):
        index(Cs, Ns)
    with pytest.raises(MismatchedModulus):
        index(Cs, standard_group("SplitCartan", 5))


def test_det_image_examples():
    assert det_image(MatrixGroup(7, [])).values == (1,)
    for fam in ("SplitCartan", "NonsplitCartan"):
        d = det_image(standard_group(fam, 11))
        assert d.surjective and len(d.values) == 10


def test_det_image_matches_elements():
    from gl2lab.mat2 import det_codes

    for spec in ("Gell(7)", "Z(13)", "CsPow(13,4)", "gen(9;[[2,0],[0,1]])"):
        G = parse_group_spec(spec)
        assert det_image(G).values == tuple(np.unique(det_codes(G.elements, G.n)).tolist())


def test_semisimplify_borel_examples():
    ell = 7
    Cs = standard_group("SplitCartan", ell)
    assert semisimplify_borel(Cs) == Cs
    S = MatrixGroup(ell, [Mat2.diag(2, 4, ell)])
    G = MatrixGroup(ell, list(shear_group(ell).generators) + list(S.generators))
    assert semisimplify_borel(G) == S
    with pytest.raises(NotInBorel):
        semisimplify_borel(standard_group("SplitNormalizer", ell))


def test_minimal_cartan_power_examples():
    ell = 13
    assert minimal_cartan_power(standard_group("SplitCartan", ell)) == 1
    sq = standard_group("SplitCartanPower", ell, 2)
    G = MatrixGroup(ell, list(sq.generators) + list(standard_group("Scalars", ell).generators))
    assert minimal_cartan_power(G) == 2
    assert minimal_cartan_power(MatrixGroup(ell, [])) is None


def test_conjugate_preserves_order():
    G = standard_group("NonsplitNormalizer", 7)
    m = Mat2(7, 1, 2, 3, 5)
    H = conjugate(G, m)
    assert H.order == G.order
    mi = mat_inv(m)
    want = sorted((mi @ Mat2.from_code(int(c), 7) @ m).code for c in G.elements)
    assert closure(H.generators, 7).elements.tolist() == want


def test_gl2_composite_levels():
    for n in (4, 6, 9):
        assert gl2(n).order == gl2_order(n)
        assert closure(gl2(n).generators, n).order == gl2_order(n)


def test_parse_group_spec():
    assert parse_group_spec("B(7)").order == 7 * 36
    assert parse_group_spec("CsPow(13, 3)").order == 16
    G = parse_group_spec("gen(9;[[1,1],[0,1]],[[2,0],[0,1]])")
    assert G.n == 9 and G.order == 54
    assert parse_group_spec(G.spec) == G
    J = parse_group_spec("join(Cs(7),gen(7;[[0,1],[1,0]]))")
    assert J == standard_group("SplitNormalizer", 7)
    for bad in ("Foo(7)", "gen(7)", "gen(x;[[1,0],[0,1]])", "join(B(7))"):
        with pytest.raises(SpecSyntaxError):
            parse_group_spec(bad)
