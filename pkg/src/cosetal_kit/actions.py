"""Candidate actions, compatibility, validity and the poset WAct(H, N)."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import IncompatiblePair, InvalidAction, NotCompatible, ShapeMismatch
from .limits import require_enum
from .monoid import FiniteMonoid
from .relations import (
    IndexedEqRel,
    check_admissible,
    coarse_equivalence,
    enumerate_admissible,
    refines,
)
from .verdict import PASS, Verdict

ActionTable = tuple[tuple[int, ...], ...]


@dataclass(frozen=True, eq=False)
class CandidateAction:
    """A total map H x N -> N, stored with rows indexed by H."""

    H: FiniteMonoid
    N: FiniteMonoid
    table: ActionTable

    def __post_init__(self):
        t = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", t)
        if len(t) != self.H.size or any(len(row) != self.N.size for row in t):
            raise ShapeMismatch(f"action table must be {self.H.size}x{self.N.size}")
        if any(not 0 <= x < self.N.size for row in t for x in row):
            raise ShapeMismatch("action table entry outside N")

    def __call__(self, h: int, n: int) -> int:
        return self.table[h][n]

    def __eq__(self, other):
        if not isinstance(other, CandidateAction):
            return NotImplemented
        return self.table == other.table and self.H == other.H and self.N == other.N

    def __hash__(self):
        return hash(self.table)

    def __lt__(self, other):
        return self.table < other.table

    def __repr__(self):
        return f"CandidateAction({self.table})"


def trivial_action(H: FiniteMonoid, N: FiniteMonoid) -> CandidateAction:
    """alpha(h, n) = n for every h."""
    return CandidateAction(H, N, (tuple(N.elements),) * H.size)


def _check_shape(alpha: CandidateAction, E: IndexedEqRel):
    if alpha.H != E.H or alpha.N != E.N:
        raise ShapeMismatch("action and relation are over different (H, N)")


def check_compatible(alpha: CandidateAction, E: IndexedEqRel) -> Verdict:
    """Check the six compatibility conditions, reporting the first failure.

    Witness tuples start with the condition number:
    ``(1, h, n, n2, x)``, ``(2, h, n, n2, x)``, ``(3, h, n, n2)``,
    ``(4, h, h2, n)``, ``(5, h)``, ``(6, n)``.
    """
    _check_shape(alpha, E)
    H, N, t = alpha.H, alpha.N, alpha.table
    ht, nt, P = H.table, N.table, E.partitions
    pairs = E.related_pairs
    for h in H.elements:
        p, row = P[h], t[h]
        for n, n2 in pairs[h]:
            for x in N.elements:
                if p[nt[n][row[x]]] != p[nt[n2][row[x]]]:
                    return Verdict(False, (1, h, n, n2, x))
    for h in H.elements:
        for n, n2 in pairs[h]:
            for x in H.elements:
                q = P[ht[x][h]]
                if q[t[x][n]] != q[t[x][n2]]:
                    return Verdict(False, (2, h, n, n2, x))
    for h in H.elements:
        p, row = P[h], t[h]
        for n in N.elements:
            for n2 in N.elements:
                if p[row[nt[n][n2]]] != p[nt[row[n]][row[n2]]]:
                    return Verdict(False, (3, h, n, n2))
    for h in H.elements:
        for h2 in H.elements:
            hh = ht[h][h2]
            p = P[hh]
            for n in N.elements:
                if p[t[hh][n]] != p[t[h][t[h2][n]]]:
                    return Verdict(False, (4, h, h2, n))
    one_n = N.identity
    for h in H.elements:
        if P[h][t[h][one_n]] != P[h][one_n]:
            return Verdict(False, (5, h))
    one = H.identity
    for n in N.elements:
        if P[one][t[one][n]] != P[one][n]:
            return Verdict(False, (6, n))
    return PASS


def _pointwise_equivalent(t1: ActionTable, t2: ActionTable, E: IndexedEqRel) -> bool:
    P = E.partitions
    return all(P[h][a] == P[h][b] for h, (r1, r2) in enumerate(zip(t1, t2)) for a, b in zip(r1, r2))


def actions_equivalent(a1: CandidateAction, a2: CandidateAction, E: IndexedEqRel) -> bool:
    for a in (a1, a2):
        if not check_compatible(a, E):
            raise NotCompatible("both actions must be compatible with the relation")
    return _pointwise_equivalent(a1.table, a2.table, E)


def is_valid(alpha: CandidateAction) -> Verdict:
    """Valid iff compatible with the coarse relation (which is then admissible).

    The witness is the coarse relation when valid.
    """
    coarse = coarse_equivalence(alpha)
    if not check_admissible(coarse):
        return Verdict(False, None)
    if not check_compatible(alpha, coarse):
        return Verdict(False, None)
    return Verdict(True, coarse)


# -- enumeration -------------------------------------------------------------


def _row_ok(h: int, row, E: IndexedEqRel) -> bool:
    """Conditions that only involve row h of the table: (1), (2) with x=h, (3), (5), (6)."""
    H, N = E.H, E.N
    ht, nt, P = H.table, N.table, E.partitions
    p = P[h]
    one_n = N.identity
    if p[row[one_n]] != p[one_n]:
        return False
    if h == H.identity and any(p[row[n]] != p[n] for n in N.elements):
        return False
    for n in N.elements:
        for n2 in N.elements:
            if p[row[nt[n][n2]]] != p[nt[row[n]][row[n2]]]:
                return False
    pairs = E.related_pairs
    for n, n2 in pairs[h]:
        for x in N.elements:
            if p[nt[n][row[x]]] != p[nt[n2][row[x]]]:
                return False
    for k in H.elements:
        q = P[ht[h][k]]
        for n, n2 in pairs[k]:
            if q[row[n]] != q[row[n2]]:
                return False
    return True


def compatible_tables(E: IndexedEqRel) -> list[ActionTable]:
    """All action tables compatible with E, in lexicographic order.

    Rows are filtered by the row-local conditions first; the composition
    condition (4) is checked as soon as the three rows it touches are fixed.
    """
    H, N = E.H, E.N
    require_enum(H, N)
    ht, P = H.table, E.partitions
    all_rows = list(product(N.elements, repeat=N.size))
    rows_for = [[r for r in all_rows if _row_ok(h, r, E)] for h in H.elements]
    order = list(H.elements)
    pos = {h: i for i, h in enumerate(order)}
    # condition-4 triples (h, h2) checked once all of h, h2, h*h2 are placed
    checks_at: list[list[tuple[int, int]]] = [[] for _ in order]
    for h in H.elements:
        for h2 in H.elements:
            last = max(pos[h], pos[h2], pos[ht[h][h2]])
            checks_at[last].append((h, h2))
    out: list[ActionTable] = []
    table: list = [None] * H.size

    def rec(i):
        if i == len(order):
            out.append(tuple(table))
            return
        h = order[i]
        for row in rows_for[h]:
            table[h] = row
            ok = True
            for a, b in checks_at[i]:
                ab = ht[a][b]
                p = P[ab]
                ra, rb, rab = table[a], table[b], table[ab]
                if any(p[rab[n]] != p[ra[rb[n]]] for n in N.elements):
                    ok = False
                    break
            if ok:
                rec(i + 1)
        table[h] = None

    rec(0)
    out.sort()
    return out


def candidate_tables(H: FiniteMonoid, N: FiniteMonoid):
    """Every |H| x |N| table, valid or not (oracle use only)."""
    require_enum(H, N)
    rows = list(product(N.elements, repeat=N.size))
    for combo in product(rows, repeat=H.size):
        yield combo


def valid_actions(H: FiniteMonoid, N: FiniteMonoid) -> list[CandidateAction]:
    """Every valid action table, found as the union of per-relation compatible tables."""
    seen = set()
    for E in enumerate_admissible(H, N):
        seen.update(compatible_tables(E))
    return [CandidateAction(H, N, t) for t in sorted(seen)]


@dataclass(frozen=True)
class RelationLattice:
    action: CandidateAction
    relations: list[IndexedEqRel]
    # leq[i][j]: relations[i] refines relations[j]
    leq: list[list[bool]]

    def index(self, E: IndexedEqRel) -> int:
        return self.relations.index(E)

    @property
    def bottom(self) -> int:
        return next(i for i in range(len(self.relations)) if all(self.leq[i]))

    @property
    def top(self) -> int:
        return next(j for j in range(len(self.relations)) if all(r[j] for r in self.leq))


def enumerate_compatible_relations(alpha: CandidateAction) -> RelationLattice:
    """Admissible relations compatible with a valid action, ordered by refinement."""
    v = is_valid(alpha)
    if not v:
        raise InvalidAction("action is not compatible with any admissible relation")
    rels = [E for E in enumerate_admissible(alpha.H, alpha.N) if check_compatible(alpha, E)]
    leq = [[refines(a, b) for b in rels] for a in rels]
    return RelationLattice(alpha, rels, leq)


def canonical_action(alpha: CandidateAction, E: IndexedEqRel) -> CandidateAction:
    """Lexicographically least table compatible with E and equivalent to alpha."""
    if not check_compatible(alpha, E):
        raise NotCompatible("action is not compatible with the relation")
    H, N = alpha.H, alpha.N
    members = E.class_members
    P = E.partitions
    cells = [(h, n) for h in H.elements for n in N.elements]
    choice = [list(row) for row in alpha.table]
    found = []

    def rec(i):
        if i == len(cells):
            cand = CandidateAction(H, N, tuple(tuple(r) for r in choice))
            if check_compatible(cand, E):
                found.append(cand)
                return True
            return False
        h, n = cells[i]
        for v in members[h][P[h][alpha.table[h][n]]]:
            choice[h][n] = v
            if n == N.size - 1 and not _row_ok(h, choice[h], E):
                continue
            if rec(i + 1):
                return True
        choice[h][n] = alpha.table[h][n]
        return False

    rec(0)
    return found[0]


@dataclass(frozen=True, eq=False)
class CompatiblePair:
    """(E, [phi]) with phi the canonical representative of its class."""

    relation: IndexedEqRel
    action: CandidateAction

    @property
    def H(self):
        return self.relation.H

    @property
    def N(self):
        return self.relation.N

    @property
    def key(self):
        return (self.relation.partitions, self.action.table)

    def __eq__(self, other):
        if not isinstance(other, CompatiblePair):
            return NotImplemented
        return self.key == other.key and self.H == other.H and self.N == other.N

    def __hash__(self):
        return hash(self.key)

    def __lt__(self, other):
        return self.key < other.key

    def __repr__(self):
        return f"CompatiblePair(E={self.relation.partitions}, phi={self.action.table})"


def make_pair(E: IndexedEqRel, alpha: CandidateAction, canonical: bool = True) -> CompatiblePair:
    if not check_admissible(E):
        raise IncompatiblePair("relation is not admissible")
    if not check_compatible(alpha, E):
        raise IncompatiblePair("action is not compatible with the relation")
    return CompatiblePair(E, canonical_action(alpha, E) if canonical else alpha)


def wact_leq(p: CompatiblePair, q: CompatiblePair) -> bool:
    """(E, [phi]) <= (E', [phi']) iff E refines E' and phi ~ phi' under E'."""
    return refines(p.relation, q.relation) and _pointwise_equivalent(
        p.action.table, q.action.table, q.relation
    )


@dataclass(frozen=True)
class WActPoset:
    H: FiniteMonoid
    N: FiniteMonoid
    elements: list[CompatiblePair]
    order: list[list[bool]]

    def index(self, pair: CompatiblePair) -> int:
        return self.elements.index(pair)

    def find(self, E: IndexedEqRel, alpha: CandidateAction) -> int:
        """Index of the element whose class contains (E, alpha)."""
        for i, p in enumerate(self.elements):
            if p.relation == E and _pointwise_equivalent(p.action.table, alpha.table, E):
                return i
        raise KeyError("no WAct element for that pair")

    def strict_relations(self) -> list[tuple[int, int]]:
        n = len(self.elements)
        return [(i, j) for i in range(n) for j in range(n) if i != j and self.order[i][j]]

    def covers(self) -> list[tuple[int, int]]:
        strict = set(self.strict_relations())
        return [
            (i, j)
            for i, j in sorted(strict)
            if not any((i, k) in strict and (k, j) in strict for k in range(len(self.elements)))
        ]


def wact_poset(H: FiniteMonoid, N: FiniteMonoid) -> WActPoset:
    """All compatible pairs up to action equivalence, with canonical representatives."""
    require_enum(H, N)
    elements = []
    for E in enumerate_admissible(H, N):
        P = E.partitions
        classes: dict[tuple, ActionTable] = {}
        for t in compatible_tables(E):
            key = tuple(tuple(P[h][x] for x in row) for h, row in enumerate(t))
            if key not in classes or t < classes[key]:
                classes[key] = t
        for t in sorted(classes.values()):
            elements.append(CompatiblePair(E, CandidateAction(H, N, t)))
    elements.sort()
    order = [[wact_leq(a, b) for b in elements] for a in elements]
    return WActPoset(H, N, elements, order)
