"""The inverse monoids H~2_phi, the inverse category H~2 and the ordered groupoid H^2.

Every structure is materialised as explicit tables and its laws are checked
after construction.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product

from .actions import (
    CandidateAction,
    CompatiblePair,
    WActPoset,
    _pointwise_equivalent,
    check_compatible,
    enumerate_compatible_relations,
    make_pair,
    valid_actions,
    wact_poset,
)
from .cohomology import CohomologyGroup, cohomology_group, kernel_group, l_map
from .errors import CapExceeded, TheoremCheckFailed
from .limits import get_limits, require_enum
from .monoid import FiniteMonoid, check_monoid, find_isomorphism
from .relations import join
from .verdict import PASS, Verdict

__all__ = [
    "FiniteCategory",
    "TildeH2Monoid",
    "check_inverse_monoid",
    "check_l_functoriality",
    "compare_with_core",
    "generalized_inverses",
    "grothendieck_core",
    "hat_h2_groupoid",
    "idempotent_semilattice",
    "tilde_h2_category",
    "tilde_h2_monoid",
]


# -- inverse monoids ---------------------------------------------------------


def generalized_inverses(M: FiniteMonoid) -> list[list[int]]:
    """For each x, every y with xyx = x and yxy = y."""
    t = M.table
    return [[y for y in M.elements if t[t[x][y]][x] == x and t[t[y][x]][y] == y] for x in M.elements]


def check_inverse_monoid(M: FiniteMonoid) -> bool:
    """Unique generalized inverses, cross-checked against regular + commuting idempotents."""
    t = M.table
    unique = all(len(ys) == 1 for ys in generalized_inverses(M))
    regular = all(any(t[t[x][y]][x] == x for y in M.elements) for x in M.elements)
    idem = M.idempotents
    commuting = all(t[e][f] == t[f][e] for e in idem for f in idem)
    if unique != (regular and commuting):
        raise TheoremCheckFailed("the two characterisations of inverse monoids disagree")
    return unique


@dataclass(frozen=True, eq=False)
class TildeH2Monoid:
    action: CandidateAction
    # compatible relations of the action, bottom first in sorted order
    pairs: tuple[CompatiblePair, ...]
    groups: tuple[CohomologyGroup, ...]
    # (relation index, class index)
    elements: tuple[tuple[int, int], ...]
    monoid: FiniteMonoid
    zero: int
    leq: tuple[tuple[bool, ...], ...] = field(repr=False)

    @property
    def table(self):
        return self.monoid.table

    def index(self, rel: int, cls: int) -> int:
        return self.elements.index((rel, cls))

    def negation(self, i: int) -> int:
        """(E, [g]) -> (E, [-g])."""
        r, c = self.elements[i]
        return self.index(r, self.groups[r].neg[c])


def _join_index(pairs, i, j) -> int:
    J = join(pairs[i].relation, pairs[j].relation)
    for k, p in enumerate(pairs):
        if p.relation == J:
            return k
    raise TheoremCheckFailed("join of two compatible relations is not compatible")


def tilde_h2_monoid(phi: CandidateAction) -> TildeH2Monoid:
    """Elements (E, [g]) over the compatible relations of phi.

    (E1, [g1])(E2, [g2]) = (E1 v E2, l[g1] + l[g2]); the identity is (bottom, 0).
    """
    lattice = enumerate_compatible_relations(phi)
    pairs = tuple(make_pair(E, phi) for E in lattice.relations)
    kernel_group(pairs[0])
    groups = tuple(cohomology_group(p) for p in pairs)
    m = len(pairs)
    joins = [[_join_index(pairs, i, j) for j in range(m)] for i in range(m)]
    ells = {}
    for i in range(m):
        for j in range(m):
            if lattice.leq[i][j]:
                ells[(i, j)] = l_map(groups[i], groups[j])
    elements = tuple((r, c) for r in range(m) for c in range(groups[r].order))
    pos = {x: i for i, x in enumerate(elements)}
    table = []
    for r1, c1 in elements:
        row = []
        for r2, c2 in elements:
            k = joins[r1][r2]
            c = groups[k].add[ells[(r1, k)][c1]][ells[(r2, k)][c2]]
            row.append(pos[(k, c)])
        table.append(row)
    bottom = lattice.bottom
    zero = pos[(bottom, groups[bottom].zero)]
    rep = check_monoid(table, zero)
    if not rep:
        raise TheoremCheckFailed(f"H~2_phi is not a monoid: {rep.violation}")
    labels = [f"E{r}:c{c}" for r, c in elements]
    M = FiniteMonoid(table, zero, labels, "H~2_phi")
    leq = tuple(tuple(r) for r in lattice.leq)
    return TildeH2Monoid(phi, pairs, groups, elements, M, zero, leq)


def idempotent_semilattice(T: TildeH2Monoid) -> Verdict:
    """Idempotents are the (E, 0), and their natural order reverses refinement."""
    M = T.monoid
    expected = {T.index(r, g.zero) for r, g in enumerate(T.groups)}
    idem = set(M.idempotents)
    if idem != expected:
        return Verdict(False, ("idempotents", sorted(idem ^ expected)))
    t = M.table
    for e in idem:
        for f in idem:
            below = t[e][f] == e
            re, rf = T.elements[e][0], T.elements[f][0]
            if below != T.leq[rf][re]:
                return Verdict(False, ("order", e, f))
    return PASS


# -- finite categories -------------------------------------------------------


@dataclass(frozen=True, eq=False)
class FiniteCategory:
    objects: tuple
    # morphisms[i] = (source, target, payload)
    morphisms: tuple[tuple[int, int, object], ...]
    # compose[(g, f)] = g o f for f: a -> b, g: b -> c
    compose: dict = field(repr=False)
    identities: tuple[int, ...]
    object_order: tuple[tuple[bool, ...], ...] | None = None
    morphism_order: tuple[tuple[bool, ...], ...] | None = None
    name: str = ""

    @cached_property
    def _homs(self) -> dict:
        out: dict = {}
        for i, (s, t, _) in enumerate(self.morphisms):
            out.setdefault((s, t), []).append(i)
            out.setdefault(s, []).append(i)
        return out

    def hom(self, a: int, b: int) -> list[int]:
        return self._homs.get((a, b), [])

    def find(self, a: int, b: int, payload) -> int:
        for i, (s, t, p) in enumerate(self.morphisms):
            if s == a and t == b and p == payload:
                return i
        raise KeyError(payload)

    def check_laws(self) -> Verdict:
        mor = self.morphisms
        for i, (s, t, _) in enumerate(mor):
            if self.compose.get((self.identities[t], i)) != i:
                return Verdict(False, ("left identity", i))
            if self.compose.get((i, self.identities[s])) != i:
                return Verdict(False, ("right identity", i))
        for f, (a, b, _) in enumerate(mor):
            for g in self.hom_from(b):
                gf = self.compose.get((g, f))
                if gf is None or mor[gf][0] != a or mor[gf][1] != mor[g][1]:
                    return Verdict(False, ("composite", g, f))
                for h in self.hom_from(mor[g][1]):
                    if self.compose[(h, gf)] != self.compose[(self.compose[(h, g)], f)]:
                        return Verdict(False, ("associativity", h, g, f))
        return PASS

    def hom_from(self, a: int) -> list[int]:
        return self._homs.get(a, [])

    def endo_monoid(self, a: int) -> tuple[FiniteMonoid, list[int]]:
        ms = self.hom(a, a)
        pos = {m: i for i, m in enumerate(ms)}
        table = [[pos[self.compose[(g, f)]] for g in ms] for f in ms]
        # row f, column g holds g o f, matching (E1, g1)(E2, g2) read left to right
        return FiniteMonoid(table, pos[self.identities[a]]), ms

    def unique_inverse_counts(self) -> list[int]:
        """For each f: a -> b, how many g: b -> a satisfy fgf = f and gfg = g."""
        out = []
        c = self.compose
        for f, (a, b, _) in enumerate(self.morphisms):
            n = 0
            for g in self.hom(b, a):
                fg = c[(f, g)]
                gf = c[(g, f)]
                if c[(fg, f)] == f and c[(gf, g)] == g:
                    n += 1
            out.append(n)
        return out

    def is_inverse_category(self) -> bool:
        return all(n == 1 for n in self.unique_inverse_counts())

    def is_groupoid(self) -> bool:
        c = self.compose
        for f, (a, b, _) in enumerate(self.morphisms):
            if not any(
                c[(g, f)] == self.identities[a] and c[(f, g)] == self.identities[b]
                for g in self.hom(b, a)
            ):
                return False
        return True

    def underlying(self) -> FiniteCategory:
        return FiniteCategory(self.objects, self.morphisms, self.compose, self.identities, name=self.name)


def tilde_h2_category(H: FiniteMonoid, N: FiniteMonoid) -> FiniteCategory:
    """Objects are valid action tables; hom(phi, phi') holds (E, [g]) with E
    compatible with both and phi ~_E phi'."""
    require_enum(H, N)
    actions = valid_actions(H, N)
    cap = get_limits().max_category_objects
    if len(actions) > cap:
        raise CapExceeded(f"{len(actions)} valid actions; category object cap is {cap}")
    monoids = [tilde_h2_monoid(a) for a in actions]
    morphisms = []
    for i, a in enumerate(actions):
        for j, b in enumerate(actions):
            for p, grp in zip(monoids[i].pairs, monoids[i].groups):
                E = p.relation
                if check_compatible(b, E) and _pointwise_equivalent(a.table, b.table, E):
                    for c in range(grp.order):
                        morphisms.append((i, j, (E.partitions, c)))
    morphisms = tuple(morphisms)
    index = {(s, t, pl): k for k, (s, t, pl) in enumerate(morphisms)}
    pair_of = {}
    for T in monoids:
        for p, grp in zip(T.pairs, T.groups):
            pair_of[p.relation.partitions, T.action.table] = (p, grp)

    def context(obj, parts):
        return pair_of[parts, actions[obj].table]

    by_source: dict = {}
    for g, m in enumerate(morphisms):
        by_source.setdefault(m[0], []).append(g)
    compose = {}
    for f, (a, b, (E1, c1)) in enumerate(morphisms):
        for g in by_source[b]:
            _, c, (E2, c2) = morphisms[g]
            p1, g1 = context(a, E1)
            p2, g2 = context(b, E2)
            J = join(p1.relation, p2.relation).partitions
            if (J, actions[a].table) not in pair_of:
                raise TheoremCheckFailed("composite relation is not compatible with the source")
            pj, gj = context(a, J)
            # l on the target side is computed in the context of phi', which is
            # the same pair as for phi once the relations are joined
            x = gj.class_of(g1.classes[c1])
            y = gj.class_of(g2.classes[c2])
            k = index.get((a, c, (J, gj.add[x][y])))
            if k is None:
                raise TheoremCheckFailed(f"composite of {f} and {g} is not a morphism")
            compose[(g, f)] = k
    identities = []
    for i, T in enumerate(monoids):
        r, cls = T.elements[T.zero]
        identities.append(index[(i, i, (T.pairs[r].relation.partitions, cls))])
    cat = FiniteCategory(
        tuple(a.table for a in actions), morphisms, compose, tuple(identities), name="H~2"
    )
    v = cat.check_laws()
    if not v:
        raise TheoremCheckFailed(f"H~2 fails a category law: {v.witness}")
    if not cat.is_inverse_category():
        raise TheoremCheckFailed("H~2 is not an inverse category")
    return cat


# -- the ordered groupoid and the Grothendieck construction --------------------


def _l_maps(P: WActPoset):
    groups = [cohomology_group(p) for p in P.elements]
    n = len(groups)
    ells = {(i, j): l_map(groups[i], groups[j]) for i in range(n) for j in range(n) if P.order[i][j]}
    return groups, ells


def check_l_functoriality(P: WActPoset) -> Verdict:
    """l(p, p) is the identity and l(q, r) l(p, q) = l(p, r) along every chain."""
    groups, ells = _l_maps(P)
    n = len(groups)
    for i in range(n):
        if ells[(i, i)] != tuple(range(groups[i].order)):
            return Verdict(False, ("identity", i))
    for i, j, k in product(range(n), repeat=3):
        if P.order[i][j] and P.order[j][k]:
            direct, via = ells[(i, k)], ells[(j, k)]
            if any(via[ells[(i, j)][c]] != direct[c] for c in range(groups[i].order)):
                return Verdict(False, ("chain", i, j, k))
    return PASS


def hat_h2_groupoid(H: FiniteMonoid, N: FiniteMonoid) -> FiniteCategory:
    """Objects are WAct elements under the reverse order; hom is H^2 on the diagonal."""
    P = wact_poset(H, N)
    groups, ells = _l_maps(P)
    n = len(groups)
    morphisms = tuple((i, i, c) for i in range(n) for c in range(groups[i].order))
    pos = {m: k for k, m in enumerate(morphisms)}
    compose = {}
    for f, (i, _, c1) in enumerate(morphisms):
        for c2 in range(groups[i].order):
            compose[(pos[(i, i, c2)], f)] = pos[(i, i, groups[i].add[c1][c2])]
    identities = tuple(pos[(i, i, groups[i].zero)] for i in range(n))
    obj_order = tuple(tuple(P.order[j][i] for j in range(n)) for i in range(n))
    # (i, c1) <= (j, c2) when j <= i in WAct and c1 = l(c2)
    mor_order = tuple(
        tuple(
            P.order[j][i] and ells[(j, i)][c2] == c1
            for (j, _, c2) in morphisms
        )
        for (i, _, c1) in morphisms
    )
    cat = FiniteCategory(P.elements, morphisms, compose, identities, obj_order, mor_order, "H^2")
    v = cat.check_laws()
    if not v:
        raise TheoremCheckFailed(f"H^2 fails a category law: {v.witness}")
    if not cat.is_groupoid():
        raise TheoremCheckFailed("H^2 is not a groupoid")
    v = check_ordered_groupoid(cat)
    if not v:
        raise TheoremCheckFailed(f"H^2 is not an ordered groupoid: {v.witness}")
    return cat


def _is_partial_order(m) -> bool:
    n = len(m)
    if not all(m[i][i] for i in range(n)):
        return False
    for i in range(n):
        for j in range(n):
            if i != j and m[i][j] and m[j][i]:
                return False
            if m[i][j] and not all(m[i][k] for k in range(n) if m[j][k]):
                return False
    return True


def _inverse(cat: FiniteCategory, f: int) -> int:
    a, b, _ = cat.morphisms[f]
    return next(
        g for g in cat.hom(b, a)
        if cat.compose[(g, f)] == cat.identities[a] and cat.compose[(f, g)] == cat.identities[b]
    )


def check_ordered_groupoid(cat: FiniteCategory) -> Verdict:
    """Order axioms, compatibility with inverses and composites, unique restrictions."""
    oo, mo = cat.object_order, cat.morphism_order
    if not _is_partial_order(oo):
        return Verdict(False, ("object order",))
    if not _is_partial_order(mo):
        return Verdict(False, ("morphism order",))
    mor = cat.morphisms
    for f, (a, _, _) in enumerate(mor):
        for g, (b, _, _) in enumerate(mor):
            if mo[f][g]:
                if not oo[a][b]:
                    return Verdict(False, ("sources", f, g))
                if not mo[_inverse(cat, f)][_inverse(cat, g)]:
                    return Verdict(False, ("inverse", f, g))
    for (f, g), fg in cat.compose.items():
        for (f2, g2), fg2 in cat.compose.items():
            if mo[f][f2] and mo[g][g2] and not mo[fg][fg2]:
                return Verdict(False, ("composite", f, g, f2, g2))
    for g, (b, _, _) in enumerate(mor):
        for a in range(len(cat.objects)):
            if oo[a][b]:
                below = [f for f in cat.hom_from(a) if mo[f][g]]
                if len(below) != 1:
                    return Verdict(False, ("restriction", g, a))
    return PASS


def grothendieck_core(H: FiniteMonoid, N: FiniteMonoid) -> FiniteCategory:
    """The groupoid of invertible morphisms of the Grothendieck construction of l.

    Morphisms of the construction are (p <= q, a) with a in H^2(q); composing
    (q <= r, b) after (p <= q, a) gives (p <= r, l(a) + b). The core is found by
    searching for two-sided inverses, not by assuming which morphisms have them.
    """
    P = wact_poset(H, N)
    groups, ells = _l_maps(P)
    n = len(groups)
    full = tuple(
        (i, j, c) for i in range(n) for j in range(n) if P.order[i][j] for c in range(groups[j].order)
    )
    pos = {m: k for k, m in enumerate(full)}

    def comp(g, f):
        i, j, a = full[f]
        _, k, b = full[g]
        return pos[(i, k, groups[k].add[ells[(j, k)][a]][b])]

    ident = {i: pos[(i, i, groups[i].zero)] for i in range(n)}
    invertible = [
        f for f, (i, j, _) in enumerate(full)
        if any(
            full[g][0] == j and full[g][1] == i and comp(g, f) == ident[i] and comp(f, g) == ident[j]
            for g in range(len(full))
        )
    ]
    morphisms = tuple(full[f] for f in invertible)
    cpos = {m: k for k, m in enumerate(morphisms)}
    compose = {}
    for f in invertible:
        for g in invertible:
            if full[g][0] == full[f][1]:
                compose[(cpos[full[g]], cpos[full[f]])] = cpos[full[comp(g, f)]]
    identities = tuple(cpos[full[ident[i]]] for i in range(n))
    cat = FiniteCategory(P.elements, morphisms, compose, identities, name="core")
    v = cat.check_laws()
    if not v:
        raise TheoremCheckFailed(f"core fails a category law: {v.witness}")
    return cat


def compare_with_core(hat: FiniteCategory, core: FiniteCategory) -> Verdict:
    """Search for an isomorphism of categories between two finite groupoids.

    Objects are matched by equality (both are indexed by WAct elements). Hom
    sizes are compared everywhere; the groupoids have no morphisms between
    distinct objects, so the rest is a brute-force iso of each endo-group.
    """
    if list(hat.objects) != list(core.objects):
        return Verdict(False, ("objects",))
    n = len(hat.objects)
    if any(s != t for s, t, _ in hat.morphisms + core.morphisms):
        return Verdict(False, ("non-endo morphism",))
    for a in range(n):
        for b in range(n):
            if len(hat.hom(a, b)) != len(core.hom(a, b)):
                return Verdict(False, ("hom size", a, b))
    for a in range(n):
        m1, _ = hat.endo_monoid(a)
        m2, _ = core.endo_monoid(a)
        if find_isomorphism(m1, m2) is None:
            return Verdict(False, ("endo group", a))
    return PASS
