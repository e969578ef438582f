"""Factor sets, inner factor sets and the groups H^2(H, N, E, [phi]).

N is an abelian group written additively here (``+``, ``-``, ``0``); the
group law is the monoid table of N. A factor set is an |H| x |H| table of
N-elements. Cells are compared modulo the relation at the product index, so
every table is reduced to class representatives before it is stored.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from .actions import CompatiblePair, wact_leq
from .errors import (
    ContextMismatch,
    KernelNotAbelianGroup,
    NotAbelian,
    NotAGroup,
    NotComparable,
    ShapeMismatch,
    TheoremCheckFailed,
    UnitNotPreserved,
)
from .limits import require_enum
from .monoid import AbelianGroupWitness, FiniteMonoid, abelian_group_witness
from .verdict import PASS, Verdict

FactorTable = tuple[tuple[int, ...], ...]


def kernel_group(pair: CompatiblePair) -> AbelianGroupWitness:
    try:
        return abelian_group_witness(pair.N)
    except (NotAGroup, NotAbelian) as exc:
        raise KernelNotAbelianGroup(str(exc)) from None


def _shape(g, pair):
    n = pair.H.size
    if len(g) != n or any(len(r) != n for r in g):
        raise ShapeMismatch(f"factor set must be {n}x{n}")
    if any(not 0 <= x < pair.N.size for r in g for x in r):
        raise ShapeMismatch("factor set entry outside N")
    return tuple(tuple(r) for r in g)


def canonical_factor_set(g, pair: CompatiblePair) -> FactorTable:
    ht, P = pair.H.table, pair.relation.partitions
    return tuple(tuple(P[ht[a][b]][x] for b, x in enumerate(row)) for a, row in enumerate(g))


def constant_factor_set(pair: CompatiblePair) -> FactorTable:
    return ((pair.N.identity,) * pair.H.size,) * pair.H.size


def check_factor_set(g, pair: CompatiblePair) -> Verdict:
    """Unit and cocycle conditions modulo E.

    Witnesses: ``("unit", h, side)`` or ``("cocycle", x, y, z)``.
    """
    g = _shape(g, pair)
    A = kernel_group(pair)
    H, P, phi = pair.H, pair.relation.partitions, pair.action.table
    ht, add, one, zero = H.table, A.add, H.identity, A.zero
    for h in H.elements:
        p = P[h]
        if p[g[h][one]] != p[zero]:
            return Verdict(False, ("unit", h, "right"))
        if p[g[one][h]] != p[zero]:
            return Verdict(False, ("unit", h, "left"))
    for x, y, z in product(H.elements, repeat=3):
        xy, yz = ht[x][y], ht[y][z]
        p = P[ht[xy][z]]
        if p[add(g[x][y], g[xy][z])] != p[add(phi[x][g[y][z]], g[x][yz])]:
            return Verdict(False, ("cocycle", x, y, z))
    return PASS


def unit_preserving_maps(H: FiniteMonoid, N: FiniteMonoid):
    """All t: H -> N with t(1) = 1."""
    choices = [(N.identity,) if h == H.identity else tuple(N.elements) for h in H.elements]
    for t in product(*choices):
        yield t


def inner_factor_set(t, pair: CompatiblePair) -> FactorTable:
    """delta t(h, h') = phi(h, t(h')) - t(hh') + t(h)."""
    A = kernel_group(pair)
    H = pair.H
    if len(t) != H.size:
        raise ShapeMismatch("t must have one value per element of H")
    if t[H.identity] != A.zero:
        raise UnitNotPreserved("t must send the identity of H to the identity of N")
    phi, ht = pair.action.table, H.table
    return tuple(
        tuple(A.add(A.sub(phi[h][t[h2]], t[ht[h][h2]]), t[h]) for h2 in H.elements)
        for h in H.elements
    )


def add_tables(A: AbelianGroupWitness, g1, g2) -> FactorTable:
    return tuple(tuple(A.add(a, b) for a, b in zip(r1, r2)) for r1, r2 in zip(g1, g2))


def neg_table(A: AbelianGroupWitness, g) -> FactorTable:
    return tuple(tuple(A.neg(a) for a in r) for r in g)


def factor_sets_equivalent(g1, g2, pair: CompatiblePair) -> Verdict:
    """Search every unit-preserving t for (delta t + g2) ~ g1 cellwise.

    The witness on success is the first such t.
    """
    A = kernel_group(pair)
    g1 = canonical_factor_set(_shape(g1, pair), pair)
    g2 = _shape(g2, pair)
    for t in unit_preserving_maps(pair.H, pair.N):
        shifted = add_tables(A, inner_factor_set(t, pair), g2)
        if canonical_factor_set(shifted, pair) == g1:
            return Verdict(True, t)
    return Verdict(False, None)


def enumerate_factor_sets(pair: CompatiblePair) -> list[FactorTable]:
    """All factor sets with each cell reduced to its class representative.

    Unit cells are pinned to the class of the identity; the remaining cells
    are filled in row-major order and every cocycle triple is tested as soon
    as its four cells are known.
    """
    require_enum(pair.H, pair.N)
    A = kernel_group(pair)
    H, E, phi = pair.H, pair.relation, pair.action.table
    P, ht, one, add = E.partitions, H.table, H.identity, A.add
    m = H.size
    cells = [(a, b) for a in H.elements for b in H.elements]
    pos = {c: i for i, c in enumerate(cells)}
    cands = []
    for a, b in cells:
        if a == one or b == one:
            cands.append((P[ht[a][b]][A.zero],))
        else:
            cands.append(E.classes(ht[a][b]))
    triples_at: list[list[tuple[int, int, int]]] = [[] for _ in cells]
    for x, y, z in product(H.elements, repeat=3):
        need = [(x, y), (ht[x][y], z), (y, z), (x, ht[y][z])]
        triples_at[max(pos[c] for c in need)].append((x, y, z))
    g = [[None] * m for _ in range(m)]
    out: list[FactorTable] = []

    def rec(i):
        if i == len(cells):
            out.append(tuple(tuple(r) for r in g))
            return
        a, b = cells[i]
        for v in cands[i]:
            g[a][b] = v
            ok = True
            for x, y, z in triples_at[i]:
                xy, yz = ht[x][y], ht[y][z]
                p = P[ht[xy][z]]
                if p[add(g[x][y], g[xy][z])] != p[add(phi[x][g[y][z]], g[x][yz])]:
                    ok = False
                    break
            if ok:
                rec(i + 1)
        g[a][b] = None

    rec(0)
    out.sort()
    return out


@dataclass(frozen=True, eq=False)
class CohomologyGroup:
    pair: CompatiblePair
    # canonical representatives (least member of each coset), sorted
    classes: tuple[FactorTable, ...]
    add: tuple[tuple[int, ...], ...]
    zero: int
    neg: tuple[int, ...]
    inner: frozenset = field(repr=False)
    # every canonical factor set -> index of its class
    _index: dict = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.classes)

    def class_of(self, g) -> int:
        """Index of the class containing a factor set for this context."""
        g = canonical_factor_set(_shape(g, self.pair), self.pair)
        try:
            return self._index[g]
        except KeyError:
            raise ContextMismatch("table is not a factor set for this context") from None

    def representative(self, i: int) -> FactorTable:
        return self.classes[i]

    def as_monoid(self) -> FiniteMonoid:
        return FiniteMonoid(self.add, self.zero, [f"c{i}" for i in range(self.order)], "H2")

    def check_group_laws(self) -> Verdict:
        n, a, z = self.order, self.add, self.zero
        for i in range(n):
            if a[i][z] != i or a[z][i] != i:
                return Verdict(False, ("zero", i))
            if a[i][self.neg[i]] != z:
                return Verdict(False, ("inverse", i))
            for j in range(n):
                if a[i][j] != a[j][i]:
                    return Verdict(False, ("commutative", i, j))
                for k in range(n):
                    if a[a[i][j]][k] != a[i][a[j][k]]:
                        return Verdict(False, ("associative", i, j, k))
        return PASS


@lru_cache(maxsize=None)
def cohomology_group(pair: CompatiblePair) -> CohomologyGroup:
    """Factor sets modulo inner factor sets, with pointwise addition."""
    A = kernel_group(pair)
    inner = frozenset(
        canonical_factor_set(inner_factor_set(t, pair), pair)
        for t in unit_preserving_maps(pair.H, pair.N)
    )
    for b in inner:
        if not check_factor_set(b, pair):
            raise TheoremCheckFailed(f"inner factor set {b} fails the factor-set conditions")
    remaining = set(enumerate_factor_sets(pair))
    reps = []
    for g in sorted(remaining):
        if g not in remaining:
            continue
        coset = {canonical_factor_set(add_tables(A, g, b), pair) for b in inner}
        if not coset <= remaining:
            raise TheoremCheckFailed("a factor set shifted by an inner one left the enumeration")
        remaining -= coset
        reps.append(g)
    index = {}
    for i, g in enumerate(reps):
        for b in inner:
            index[canonical_factor_set(add_tables(A, g, b), pair)] = i
    zero_table = canonical_factor_set(constant_factor_set(pair), pair)
    zero = index[zero_table]
    addt = tuple(
        tuple(index[canonical_factor_set(add_tables(A, g1, g2), pair)] for g2 in reps)
        for g1 in reps
    )
    neg = tuple(index[canonical_factor_set(neg_table(A, g), pair)] for g in reps)
    group = CohomologyGroup(pair, tuple(reps), addt, zero, neg, inner, index)
    laws = group.check_group_laws()
    if not laws:
        raise TheoremCheckFailed(f"cohomology group law fails: {laws.witness}")
    return group


def _require_leq(src: CohomologyGroup, tgt: CohomologyGroup):
    if src.pair.H != tgt.pair.H or src.pair.N != tgt.pair.N:
        raise NotComparable("cohomology groups over different (H, N)")
    if not wact_leq(src.pair, tgt.pair):
        raise NotComparable("source pair is not below target pair in WAct")


def pushforward_l(cls: int, src: CohomologyGroup, tgt: CohomologyGroup) -> int:
    """Send [g]_E to [g]_E' for (E, [phi]) <= (E', [phi])."""
    _require_leq(src, tgt)
    return tgt.class_of(src.classes[cls])


def l_map(src: CohomologyGroup, tgt: CohomologyGroup) -> tuple[int, ...]:
    """The whole map H^2(E) -> H^2(E'), verified to be a group homomorphism."""
    _require_leq(src, tgt)
    image = tuple(tgt.class_of(g) for g in src.classes)
    if image[src.zero] != tgt.zero:
        raise TheoremCheckFailed("l does not preserve zero")
    for i in range(src.order):
        for j in range(src.order):
            if image[src.add[i][j]] != tgt.add[image[i]][image[j]]:
                raise TheoremCheckFailed(f"l does not preserve addition at ({i}, {j})")
    return image


def baer_sum(group: CohomologyGroup, c1: int, c2: int) -> int:
    return group.add[c1][c2]
