import pytest

from cosetal_kit.actions import CandidateAction, make_pair, trivial_action, wact_poset
from cosetal_kit.cohomology import constant_factor_set
from cosetal_kit.errors import IncompatiblePair, KernelNotAbelianGroup, NotExtension, NotFactorSet, NotSplitExtension
from cosetal_kit.monoid import FiniteMonoid, are_isomorphic, check_homomorphism
from cosetal_kit.presentation import ExtensionPresentation, check_extension
from cosetal_kit.products import (
    check_cosetal,
    check_special_schreier,
    check_weakly_schreier,
    extension_of,
    induced_split_extension,
    twisted_extension,
    twisted_product,
    weak_semidirect,
)
from cosetal_kit.relations import IndexedEqRel, fine_relation

from helpers import B, K4, LZ, M3, ONE, T, TWO, Z2, Z3, Z4, m3_extension, z4_extension

E_FINE = IndexedEqRel(TWO, Z2, ((0, 1), (0, 1)))
E_COARSE = IndexedEqRel(TWO, Z2, ((0, 1), (0, 0)))
ID = CandidateAction(TWO, Z2, ((0, 1), (0, 1)))
PROJ = CandidateAction(TWO, Z2, ((0, 1), (0, 0)))
Z2_FINE = fine_relation(Z2, Z2)
Z2_ID = CandidateAction(Z2, Z2, ((0, 1), (0, 1)))

# 2 x 2 under componentwise meet, (a, b) stored at 2a + b
TWO_SQ = FiniteMonoid.from_table(
    [[2 * (a1 | a2) + (b1 | b2) for a2 in (0, 1) for b2 in (0, 1)] for a1 in (0, 1) for b1 in (0, 1)],
    0, ["TT", "TB", "BT", "BB"], "2x2",
)


def two_square_extension():
    """k(n) = (n, T), e = second projection, s(h) = (T, h)."""
    return ExtensionPresentation.from_arrays(TWO, TWO_SQ, TWO, (0, 2), (0, 1, 0, 1), (0, 1))


def brute_wsd_table(E, t, H, N, g=None):
    """The product computed from every pair of class members, as a set of triples."""
    P = E.partitions
    out = set()
    for h in H.elements:
        for h2 in H.elements:
            hh = H.table[h][h2]
            for a in N.elements:
                for b in N.elements:
                    v = N.table[a][t[h][b]]
                    if g is not None:
                        v = N.table[v][g[h][h2]]
                    out.add(((P[h][a], h), (P[h2][b], h2), (P[hh][v], hh)))
    return out


def as_triples(w):
    c = w.monoid.table
    return {(w.carrier[i], w.carrier[j], w.carrier[c[i][j]]) for i in w.monoid.elements for j in w.monoid.elements}


def test_coarse_proj_is_m3():
    w = weak_semidirect(E_COARSE, PROJ)
    assert w.monoid.size == 3
    assert are_isomorphic(w.monoid, M3)
    bot = w.index(0, B)
    assert all(w.monoid.table[bot][x] == bot == w.monoid.table[x][bot] for x in w.monoid.elements)


def test_fine_relation_gives_four_elements():
    for phi in (PROJ, ID):
        w = weak_semidirect(E_FINE, phi)
        assert w.monoid.size == 4
    assert are_isomorphic(weak_semidirect(E_FINE, ID).monoid, FiniteMonoid.from_table(
        [[2 * ((a1 + a2) % 2) + (b1 | b2) for a2 in (0, 1) for b2 in (0, 1)] for a1 in (0, 1) for b1 in (0, 1)], 0
    ))


def test_trivial_h_gives_n():
    for N in (Z2, Z3, TWO, M3):
        w = weak_semidirect(fine_relation(ONE, N), trivial_action(ONE, N))
        assert are_isomorphic(w.monoid, N)


@pytest.mark.parametrize("H,N", [(TWO, Z2), (TWO, Z3), (M3, Z2), (LZ, Z2), (TWO, TWO), (Z2, TWO)], ids=lambda m: m.name)
def test_table_matches_member_products(H, N):
    for pair in wact_poset(H, N).elements:
        w = weak_semidirect(pair.relation, pair.action)
        assert as_triples(w) == brute_wsd_table(pair.relation, pair.action.table, H, N)
        sizes = sum(len(pair.relation.classes(h)) for h in H.elements)
        assert w.monoid.size == sizes


def test_incompatible_pair_rejected():
    swap = CandidateAction(TWO, Z2, ((0, 1), (1, 0)))
    with pytest.raises(IncompatiblePair):
        weak_semidirect(E_FINE, swap)
    with pytest.raises(IncompatiblePair):
        induced_split_extension(E_FINE, swap)


def test_twisted_with_zero_equals_semidirect():
    for H, N in [(TWO, Z2), (Z2, Z2), (M3, Z2), (TWO, Z3)]:
        for pair in wact_poset(H, N).elements:
            a = weak_semidirect(pair.relation, pair.action)
            b = twisted_product(pair.relation, pair.action, constant_factor_set(pair))
            assert a.monoid.table == b.monoid.table and a.carrier == b.carrier


def test_twisted_z4_and_klein():
    g = ((0, 0), (0, 1))
    w = twisted_product(Z2_FINE, Z2_ID, g)
    assert are_isomorphic(w.monoid, Z4)
    assert as_triples(w) == brute_wsd_table(Z2_FINE, Z2_ID.table, Z2, Z2, g)
    assert are_isomorphic(twisted_product(Z2_FINE, Z2_ID, ((0, 0), (0, 0))).monoid, K4)


def test_twisted_errors():
    with pytest.raises(NotFactorSet):
        twisted_product(Z2_FINE, Z2_ID, ((0, 1), (0, 0)))
    E = fine_relation(TWO, TWO)
    with pytest.raises(KernelNotAbelianGroup):
        twisted_product(E, trivial_action(TWO, TWO), ((0, 0), (0, 0)))


def test_induced_split_extensions():
    ext = induced_split_extension(E_COARSE, PROJ)
    assert check_extension(ext) and check_weakly_schreier(ext)
    assert are_isomorphic(ext.G, M3)
    assert [ext.e.image[x] for x in ext.k.image] == [T, T]
    ext = induced_split_extension(Z2_FINE, Z2_ID)
    assert are_isomorphic(ext.G, K4) and check_extension(ext)
    ext = induced_split_extension(fine_relation(ONE, Z3), trivial_action(ONE, Z3))
    assert ext.G.size == 3 and check_weakly_schreier(ext)


def test_weakly_schreier_examples():
    diag = ExtensionPresentation.from_arrays(Z2, K4, Z2, (0, 1), (0, 0, 1, 1), (0, 3))
    assert check_weakly_schreier(diag)
    assert check_weakly_schreier(two_square_extension())
    with pytest.raises(NotSplitExtension):
        check_weakly_schreier(z4_extension().with_section((0, 1)))
    # a section that is not a homomorphism
    with pytest.raises(NotSplitExtension):
        check_weakly_schreier(ExtensionPresentation.from_arrays(Z2, K4, Z2, (0, 1), (0, 0, 1, 1), (1, 3)))


def test_weakly_schreier_detects_missing_factorisation():
    # 2 -> 2 x 2 -> 2 but with the section landing on (B, h): (T, B) never factors
    bad = ExtensionPresentation.from_arrays(TWO, TWO_SQ, TWO, (0, 2), (0, 1, 0, 1), (0, 3))
    assert check_homomorphism(bad.section_map)
    assert not check_weakly_schreier(bad)


def test_cosetal_examples():
    assert check_cosetal(m3_extension())
    assert not check_cosetal(two_square_extension())
    assert check_cosetal(z4_extension())


def test_special_schreier_examples():
    assert not check_special_schreier(m3_extension())
    assert check_special_schreier(z4_extension())
    for phi in (PROJ, ID):
        assert check_special_schreier(induced_split_extension(E_FINE, phi))


def test_not_an_extension():
    # e kills too much: K4 -> Z2 with kernel of size 2 but k hitting only the unit
    bad = ExtensionPresentation.from_arrays(ONE, K4, Z2, (0,), (0, 0, 1, 1))
    with pytest.raises(NotExtension):
        check_cosetal(bad)


@pytest.mark.parametrize("H", [ONE, TWO, Z2, Z3, M3, LZ], ids=lambda m: m.name)
@pytest.mark.parametrize("N", [Z2, Z3, TWO], ids=lambda m: m.name)
def test_dichotomy(H, N):
    for pair in wact_poset(H, N).elements:
        ext = induced_split_extension(pair.relation, pair.action)
        assert check_extension(ext)
        assert check_weakly_schreier(ext)
        assert check_cosetal(ext) == N.is_group


def test_extension_of_and_twisted_extension():
    pair = make_pair(Z2_FINE, Z2_ID)
    ext = twisted_extension(pair, ((0, 0), (0, 1)))
    assert are_isomorphic(ext.G, Z4) and check_extension(ext)
    w = weak_semidirect(E_COARSE, PROJ)
    ext = extension_of(w)
    assert ext.s == (w.index(0, T), w.index(0, B))
    assert twisted_extension(make_pair(E_COARSE, PROJ)).G.table == w.monoid.table
