"""Finite monoids stored as multiplication tables.

Elements are the dense indices ``0..size-1``. The identity is stored
explicitly and need not be index 0, so catalog tables can be loaded verbatim.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from typing import Iterable, Sequence

from .errors import (
    MalformedTable,
    NotAbelian,
    NotAGroup,
    NotAMonoid,
    NotHomomorphism,
    SizeMismatch,
    CapExceeded,
)
from .limits import get_limits

Table = tuple[tuple[int, ...], ...]


def _freeze_table(table) -> Table:
    try:
        rows = tuple(tuple(int(x) for x in row) for row in table)
    except (TypeError, ValueError) as exc:
        raise MalformedTable(f"table is not a 2-d array of integers: {exc}") from None
    n = len(rows)
    if n == 0:
        raise MalformedTable("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise MalformedTable(f"row {i} has length {len(row)}, expected {n}")
        for j, x in enumerate(row):
            if not 0 <= x < n:
                raise MalformedTable(f"entry ({i},{j}) = {x} out of range 0..{n - 1}")
    return rows


@dataclass(frozen=True)
class MonoidCheck:
    valid: bool
    # ("assoc", a, b, c) or ("unit", a) for the first violation found
    violation: tuple | None = None

    def __bool__(self):
        return self.valid


def check_monoid(table, identity: int) -> MonoidCheck:
    """Decide whether ``table`` with ``identity`` is a monoid.

    Raises :class:`MalformedTable` for a non-square table or out-of-range
    entries; a well-formed table that breaks a law yields ``valid=False``
    and the first violating element or triple.
    """
    t = _freeze_table(table)
    n = len(t)
    if not 0 <= identity < n:
        raise MalformedTable(f"identity {identity} out of range 0..{n - 1}")
    for a in range(n):
        if t[identity][a] != a or t[a][identity] != a:
            return MonoidCheck(False, ("unit", a))
    for a, b, c in product(range(n), repeat=3):
        if t[t[a][b]][c] != t[a][t[b][c]]:
            return MonoidCheck(False, ("assoc", a, b, c))
    return MonoidCheck(True)


@dataclass(frozen=True, eq=False)
class FiniteMonoid:
    table: Table
    identity: int
    labels: tuple[str, ...] | None = None
    name: str = ""

    def __post_init__(self):
        t = _freeze_table(self.table)
        object.__setattr__(self, "table", t)
        cap = get_limits().max_monoid_size
        if len(t) > cap:
            raise CapExceeded(f"monoid of size {len(t)} exceeds cap {cap}")
        if not 0 <= self.identity < len(t):
            raise MalformedTable(f"identity {self.identity} out of range")
        if self.labels is None:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(len(t))))
        else:
            labels = tuple(str(x) for x in self.labels)
            if len(labels) != len(t):
                raise MalformedTable(f"{len(labels)} labels for {len(t)} elements")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_table(cls, table, identity: int, labels=None, name: str = "") -> FiniteMonoid:
        """Build a monoid, refusing tables that break associativity or the unit law."""
        report = check_monoid(table, identity)
        if not report:
            raise NotAMonoid(f"{name or 'table'} is not a monoid: {report.violation}")
        return cls(table, identity, labels, name)

    # Equality and hashing use the table and identity only; names are cosmetic.
    def __eq__(self, other):
        if not isinstance(other, FiniteMonoid):
            return NotImplemented
        return self is other or (self.identity == other.identity and self.table == other.table)

    def __hash__(self):
        return hash((self.table, self.identity))

    def __repr__(self):
        return f"FiniteMonoid({self.name or '?'}, size={self.size})"

    @property
    def size(self) -> int:
        return len(self.table)

    @cached_property
    def elements(self) -> range:
        return range(len(self.table))

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def product(self, *xs: int) -> int:
        acc = self.identity
        for x in xs:
            acc = self.table[acc][x]
        return acc

    def label(self, a: int) -> str:
        return self.labels[a]

    def index(self, label: str) -> int:
        return self.labels.index(label)

    @cached_property
    def is_commutative(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in range(a))

    @cached_property
    def inverses(self) -> tuple[int | None, ...]:
        """Two-sided inverse of each element, or None where there is none."""
        e, t = self.identity, self.table
        out = []
        for a in self.elements:
            inv = next((b for b in self.elements if t[a][b] == e and t[b][a] == e), None)
            out.append(inv)
        return tuple(out)

    @cached_property
    def is_group(self) -> bool:
        return all(x is not None for x in self.inverses)

    @cached_property
    def idempotents(self) -> tuple[int, ...]:
        return tuple(a for a in self.elements if self.table[a][a] == a)

    def is_trivial(self) -> bool:
        return self.size == 1


@dataclass(frozen=True, eq=False)
class AbelianGroupWitness:
    """An abelian group written additively on top of a monoid table."""

    monoid: FiniteMonoid
    inverse: tuple[int, ...]

    @property
    def zero(self) -> int:
        return self.monoid.identity

    def add(self, a: int, b: int) -> int:
        return self.monoid.table[a][b]

    def neg(self, a: int) -> int:
        return self.inverse[a]

    def sub(self, a: int, b: int) -> int:
        return self.monoid.table[a][self.inverse[b]]

    def sum(self, xs: Iterable[int]) -> int:
        acc = self.monoid.identity
        t = self.monoid.table
        for x in xs:
            acc = t[acc][x]
        return acc


def abelian_group_witness(m: FiniteMonoid) -> AbelianGroupWitness:
    """Return the inverse table of ``m``, or refuse with the offending element(s)."""
    for a, inv in enumerate(m.inverses):
        if inv is None:
            raise NotAGroup(f"element {m.label(a)} of {m.name or 'monoid'} has no inverse", a)
    t = m.table
    for a in m.elements:
        for b in range(a):
            if t[a][b] != t[b][a]:
                raise NotAbelian(
                    f"{m.label(b)} and {m.label(a)} do not commute in {m.name or 'monoid'}", (b, a)
                )
    return AbelianGroupWitness(m, tuple(m.inverses))


@dataclass(frozen=True, eq=False)
class MonoidMap:
    domain: FiniteMonoid
    codomain: FiniteMonoid
    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(int(x) for x in self.image)
        object.__setattr__(self, "image", image)
        if len(image) != self.domain.size:
            raise SizeMismatch(f"map has {len(image)} images for a domain of size {self.domain.size}")
        for x in image:
            if not 0 <= x < self.codomain.size:
                raise SizeMismatch(f"image {x} outside codomain of size {self.codomain.size}")

    def __call__(self, a: int) -> int:
        return self.image[a]

    def __eq__(self, other):
        if not isinstance(other, MonoidMap):
            return NotImplemented
        return (
            self.image == other.image
            and self.domain == other.domain
            and self.codomain == other.codomain
        )

    def __hash__(self):
        return hash(self.image)

    def then(self, other: MonoidMap) -> MonoidMap:
        """Diagrammatic composite: apply ``self`` first, then ``other``."""
        if self.codomain != other.domain:
            raise SizeMismatch("maps are not composable")
        return MonoidMap(self.domain, other.codomain, tuple(other.image[x] for x in self.image))

    @property
    def is_injective(self) -> bool:
        return len(set(self.image)) == len(self.image)

    @property
    def is_surjective(self) -> bool:
        return len(set(self.image)) == self.codomain.size


def identity_map(m: FiniteMonoid) -> MonoidMap:
    return MonoidMap(m, m, tuple(m.elements))


def zero_morphism(x: FiniteMonoid, y: FiniteMonoid) -> MonoidMap:
    """The constant-identity homomorphism X -> Y."""
    return MonoidMap(x, y, (y.identity,) * x.size)


def check_homomorphism(f: MonoidMap) -> bool:
    dom, cod, im = f.domain, f.codomain, f.image
    if im[dom.identity] != cod.identity:
        return False
    dt, ct = dom.table, cod.table
    return all(im[dt[a][b]] == ct[im[a]][im[b]] for a in dom.elements for b in dom.elements)


def _require_hom(f: MonoidMap):
    if not check_homomorphism(f):
        raise NotHomomorphism("map is not a monoid homomorphism")


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller index becomes the root so roots are class minima
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def canonical_partition(class_ids: Sequence) -> tuple[int, ...]:
    """Relabel arbitrary class ids so each element maps to its class minimum."""
    first: dict = {}
    out = []
    for i, c in enumerate(class_ids):
        out.append(first.setdefault(c, i))
    return tuple(out)


@dataclass(frozen=True, eq=False)
class Congruence:
    monoid: FiniteMonoid
    # each element's class representative (the class minimum)
    partition: tuple[int, ...]

    def __eq__(self, other):
        if not isinstance(other, Congruence):
            return NotImplemented
        return self.partition == other.partition and self.monoid == other.monoid

    def __hash__(self):
        return hash(self.partition)

    @property
    def classes(self) -> list[list[int]]:
        groups: dict[int, list[int]] = {}
        for a, r in enumerate(self.partition):
            groups.setdefault(r, []).append(a)
        return [groups[r] for r in sorted(groups)]

    def related(self, a: int, b: int) -> bool:
        return self.partition[a] == self.partition[b]

    def is_congruence(self) -> bool:
        p, t = self.partition, self.monoid.table
        els = self.monoid.elements
        for a in els:
            for b in els:
                if p[a] == p[b] and a != b:
                    for x in els:
                        if p[t[x][a]] != p[t[x][b]] or p[t[a][x]] != p[t[b][x]]:
                            return False
        return True

    def quotient(self) -> tuple[FiniteMonoid, MonoidMap]:
        m = self.monoid
        reps = sorted(set(self.partition))
        pos = {r: i for i, r in enumerate(reps)}
        table = [[pos[self.partition[m.table[r][s]]] for s in reps] for r in reps]
        labels = ["{" + ",".join(m.label(a) for a in cls) + "}" for cls in self.classes]
        q = FiniteMonoid(table, pos[self.partition[m.identity]], labels, f"{m.name}/~")
        proj = MonoidMap(m, q, tuple(pos[r] for r in self.partition))
        return q, proj


def congruence_closure(m: FiniteMonoid, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Smallest congruence on ``m`` containing ``pairs``.

    Union-find seeded with the pairs; every merge pushes its left and right
    translates until nothing new merges.
    """
    uf = _UnionFind(m.size)
    t = m.table
    queue = []
    for a, b in pairs:
        if not (0 <= a < m.size and 0 <= b < m.size):
            raise SizeMismatch(f"pair ({a},{b}) out of range")
        queue.append((a, b))
    while queue:
        a, b = queue.pop()
        if uf.union(a, b):
            for x in m.elements:
                queue.append((t[x][a], t[x][b]))
                queue.append((t[a][x], t[b][x]))
    return Congruence(m, tuple(uf.find(a) for a in m.elements))


def discrete_congruence(m: FiniteMonoid) -> Congruence:
    return Congruence(m, tuple(m.elements))


def kernel(f: MonoidMap) -> tuple[FiniteMonoid, MonoidMap]:
    """Submonoid of elements sent to the identity, with its inclusion."""
    _require_hom(f)
    dom = f.domain
    elems = [a for a in dom.elements if f.image[a] == f.codomain.identity]
    pos = {a: i for i, a in enumerate(elems)}
    table = [[pos[dom.table[a][b]] for b in elems] for a in elems]
    k = FiniteMonoid(table, pos[dom.identity], [dom.label(a) for a in elems], "ker")
    return k, MonoidMap(k, dom, tuple(elems))


def cokernel(f: MonoidMap) -> tuple[Congruence, FiniteMonoid, MonoidMap]:
    """Quotient of the codomain by the congruence generated by f(x) ~ 1."""
    _require_hom(f)
    cod = f.codomain
    cong = congruence_closure(cod, [(y, cod.identity) for y in f.image])
    q, proj = cong.quotient()
    return cong, q, proj


def _iso_search(m1: FiniteMonoid, m2: FiniteMonoid, want_all: bool):
    if m1.size != m2.size or m1.is_commutative != m2.is_commutative:
        return []
    if len(m1.idempotents) != len(m2.idempotents):
        return []
    n = m1.size
    t1, t2 = m1.table, m2.table
    order = sorted(m1.elements, key=lambda a: (a != m1.identity, a))
    found = []

    def extend(i, f, used):
        if i == n:
            found.append(tuple(f))
            return not want_all
        a = order[i]
        if f[a] is not None:
            return extend(i + 1, f, used)
        cands = [m2.identity] if a == m1.identity else [b for b in m2.elements if b not in used]
        for b in cands:
            f[a] = b
            used.add(b)
            ok = all(
                t2[f[x]][f[y]] == f[t1[x][y]]
                for x in order[: i + 1]
                for y in order[: i + 1]
                if f[t1[x][y]] is not None
            )
            if ok and extend(i + 1, f, used):
                return True
            used.discard(b)
            f[a] = None
        return False

    extend(0, [None] * n, set())
    return found


def find_isomorphism(m1: FiniteMonoid, m2: FiniteMonoid) -> MonoidMap | None:
    """Brute-force search for a monoid isomorphism (desk-scale sizes only)."""
    hits = _iso_search(m1, m2, want_all=False)
    return MonoidMap(m1, m2, hits[0]) if hits else None


def are_isomorphic(m1: FiniteMonoid, m2: FiniteMonoid) -> bool:
    return find_isomorphism(m1, m2) is not None
