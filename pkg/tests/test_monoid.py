import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cosetal_kit import fixtures as F
from cosetal_kit.errors import CapExceeded, MalformedTable, NotAbelian, NotAGroup, NotAMonoid
from cosetal_kit.limits import limits
from cosetal_kit.monoid import (
    Congruence,
    FiniteMonoid,
    MonoidMap,
    abelian_group_witness,
    are_isomorphic,
    check_homomorphism,
    check_monoid,
    cokernel,
    congruence_closure,
    find_isomorphism,
    identity_map,
    kernel,
    zero_morphism,
)

from helpers import LZ, M3, ONE, S3, TWO, Z2, Z3, Z4, K4, brute_is_monoid, relabel

ALL = [F.get(n) for n in F.CATALOG]


@pytest.mark.parametrize("m", ALL, ids=lambda m: m.name)
def test_fixtures_are_monoids(m):
    assert check_monoid(m.table, m.identity)
    assert brute_is_monoid(m.table, m.identity)


def test_check_monoid_examples():
    assert check_monoid([[0, 1], [1, 1]], 0)
    assert check_monoid([[0, 1, 2], [1, 2, 0], [2, 0, 1]], 0)
    # 2x2 table without a unit
    r = check_monoid([[1, 0], [0, 1]], 0)
    assert not r and r.violation[0] == "unit"


def test_check_monoid_finds_associativity_failure():
    # unit 0, but a*a = b, a*b = a, b*a = b, b*b = a breaks associativity
    table = [[0, 1, 2], [1, 2, 1], [2, 2, 1]]
    r = check_monoid(table, 0)
    assert not r and r.violation[0] == "assoc"
    a, b, c = r.violation[1:]
    assert table[table[a][b]][c] != table[a][table[b][c]]


@pytest.mark.parametrize("table", [[], [[0, 1]], [[0, 5], [1, 0]], [["x"]]])
def test_malformed_tables(table):
    with pytest.raises(MalformedTable):
        check_monoid(table, 0)


def test_from_table_rejects_non_monoid():
    with pytest.raises(NotAMonoid):
        FiniteMonoid.from_table([[1, 0], [0, 1]], 0)


def test_size_cap():
    with limits(max_monoid_size=2):
        with pytest.raises(CapExceeded):
            F.get("z3")


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=9, max_size=9), st.integers(0, 2))
def test_check_monoid_agrees_with_brute_force(flat, e):
    table = [flat[0:3], flat[3:6], flat[6:9]]
    assert bool(check_monoid(table, e)) == brute_is_monoid(table, e)


def test_group_and_commutativity_flags():
    assert Z3.is_group and Z3.is_commutative
    assert S3.is_group and not S3.is_commutative
    assert not TWO.is_group and TWO.is_commutative
    assert not LZ.is_commutative
    assert M3.inverses == (0, 1, None)


def test_abelian_group_witness():
    A = abelian_group_witness(Z4)
    assert A.add(3, 3) == 2 and A.neg(1) == 3 and A.sub(0, 1) == 3 and A.sum([1, 1, 1]) == 3
    with pytest.raises(NotAGroup) as exc:
        abelian_group_witness(M3)
    assert exc.value.element == 2
    with pytest.raises(NotAbelian):
        abelian_group_witness(S3)


def test_homomorphisms():
    assert check_homomorphism(identity_map(S3))
    assert check_homomorphism(zero_morphism(Z2, TWO))
    # Z4 -> Z2 reduction
    assert check_homomorphism(MonoidMap(Z4, Z2, (0, 1, 0, 1)))
    assert not check_homomorphism(MonoidMap(Z4, Z2, (0, 1, 1, 0)))
    # unit must be preserved
    assert not check_homomorphism(MonoidMap(TWO, TWO, (1, 1)))


def test_kernel_and_cokernel_of_projection():
    e = MonoidMap(M3, TWO, (0, 0, 1))
    K, incl = kernel(e)
    assert K.size == 2 and sorted(incl.image) == [0, 1]
    k = MonoidMap(Z2, M3, (0, 1))
    cong, Q, proj = cokernel(k)
    assert Q.size == 2 and cong.classes == [[0, 1], [2]]


def test_congruence_closure_is_smallest():
    # identify 1 with 0 in Z4: everything collapses to the cosets of {0, 1, 2, 3}
    c = congruence_closure(Z4, [(0, 1)])
    assert c.classes == [[0, 1, 2, 3]]
    c = congruence_closure(Z4, [(0, 2)])
    assert c.classes == [[0, 2], [1, 3]]
    assert c.is_congruence()
    assert not Congruence(Z4, (0, 0, 2, 3)).is_congruence()


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ALL), st.data())
def test_closure_contains_pairs_and_is_congruence(m, data):
    pairs = data.draw(st.lists(st.tuples(st.sampled_from(m.elements), st.sampled_from(m.elements)), max_size=3))
    c = congruence_closure(m, pairs)
    assert c.is_congruence()
    assert all(c.related(a, b) for a, b in pairs)
    q, proj = c.quotient()
    assert check_homomorphism(proj) and proj.is_surjective


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(ALL), st.randoms(use_true_random=False))
def test_relabelled_fixture_is_isomorphic(m, rnd):
    perm = list(range(m.size))
    rnd.shuffle(perm)
    m2 = relabel(m, perm)
    f = find_isomorphism(m, m2)
    assert f is not None and check_homomorphism(f) and f.is_injective


def test_non_isomorphic_pairs():
    assert not are_isomorphic(Z4, K4)
    assert not are_isomorphic(M3, LZ)
    assert are_isomorphic(Z2, F.cyclic(2))
    assert ONE.size == 1
