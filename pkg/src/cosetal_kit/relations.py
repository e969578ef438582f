"""H-indexed equivalence relations on N.

A relation is one partition of N per element of H. Partitions are stored as
class-of-minimum arrays (``p[n]`` is the least element of n's class) so that
equality of relations is tuple equality and sorting is deterministic.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from typing import Iterator

from .errors import DimensionMismatch, ShapeMismatch
from .limits import require_enum
from .monoid import FiniteMonoid, _UnionFind, canonical_partition
from .verdict import PASS, Verdict

Partition = tuple[int, ...]


def set_partitions(n: int) -> Iterator[Partition]:
    """All partitions of ``range(n)`` in class-of-minimum form."""
    if n == 0:
        yield ()
        return

    # restricted growth strings, converted on the fly
    def rec(i, rgs, blocks_min):
        if i == n:
            yield tuple(blocks_min[b] for b in rgs)
            return
        for b in range(len(blocks_min) + 1):
            if b == len(blocks_min):
                yield from rec(i + 1, rgs + [b], blocks_min + [i])
            else:
                yield from rec(i + 1, rgs + [b], blocks_min)

    yield from rec(0, [], [])


def is_canonical_partition(p: Partition) -> bool:
    return all(p[x] <= x and p[p[x]] == p[x] for x in range(len(p)))


def discrete(n: int) -> Partition:
    return tuple(range(n))


def total(n: int) -> Partition:
    return (0,) * n


def partition_refines(p: Partition, q: Partition) -> bool:
    """Every p-class lies inside a q-class."""
    seen: dict[int, int] = {}
    for x, r in enumerate(p):
        if seen.setdefault(r, q[x]) != q[x]:
            return False
    return True


def partition_meet(p: Partition, q: Partition) -> Partition:
    return canonical_partition(list(zip(p, q)))


def partition_join(p: Partition, q: Partition) -> Partition:
    uf = _UnionFind(len(p))
    for x in range(len(p)):
        uf.union(x, p[x])
        uf.union(x, q[x])
    return tuple(uf.find(x) for x in range(len(p)))


@dataclass(frozen=True, eq=False)
class IndexedEqRel:
    H: FiniteMonoid
    N: FiniteMonoid
    partitions: tuple[Partition, ...]

    def __post_init__(self):
        parts = tuple(tuple(int(x) for x in p) for p in self.partitions)
        object.__setattr__(self, "partitions", parts)
        if len(parts) != self.H.size:
            raise DimensionMismatch(f"{len(parts)} partitions for |H| = {self.H.size}")
        for h, p in enumerate(parts):
            if len(p) != self.N.size:
                raise DimensionMismatch(f"partition at index {h} has length {len(p)}, |N| = {self.N.size}")
            if not is_canonical_partition(p):
                raise DimensionMismatch(f"partition at index {h} is not in class-of-minimum form: {p}")

    @classmethod
    def from_class_ids(cls, H, N, class_ids) -> IndexedEqRel:
        return cls(H, N, tuple(canonical_partition(c) for c in class_ids))

    def __eq__(self, other):
        if not isinstance(other, IndexedEqRel):
            return NotImplemented
        return self.partitions == other.partitions and self.H == other.H and self.N == other.N

    def __hash__(self):
        return hash(self.partitions)

    def __lt__(self, other):
        return self.partitions < other.partitions

    def __repr__(self):
        return f"IndexedEqRel({self.partitions})"

    def rep(self, h: int, n: int) -> int:
        return self.partitions[h][n]

    def related(self, h: int, n: int, m: int) -> bool:
        p = self.partitions[h]
        return p[n] == p[m]

    def classes(self, h: int) -> tuple[int, ...]:
        """Sorted class representatives at index h."""
        return tuple(sorted(set(self.partitions[h])))

    @cached_property
    def class_members(self) -> tuple[dict[int, tuple[int, ...]], ...]:
        out = []
        for p in self.partitions:
            d: dict[int, list[int]] = {}
            for n, r in enumerate(p):
                d.setdefault(r, []).append(n)
            out.append({r: tuple(v) for r, v in d.items()})
        return tuple(out)

    @cached_property
    def related_pairs(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per index, the pairs (n, n') with n != n' in the same class."""
        out = []
        for members in self.class_members:
            out.append(tuple((a, b) for cls in members.values() for a in cls for b in cls if a != b))
        return tuple(out)

    def label(self) -> str:
        parts = []
        for h, members in enumerate(self.class_members):
            blocks = "|".join(
                ",".join(self.N.label(n) for n in members[r]) for r in sorted(members)
            )
            parts.append(f"{self.H.label(h)}:{blocks}")
        return "; ".join(parts)


def _same_shape(e1: IndexedEqRel, e2: IndexedEqRel):
    if e1.H != e2.H or e1.N != e2.N:
        raise ShapeMismatch("relations are over different (H, N)")


def fine_relation(H: FiniteMonoid, N: FiniteMonoid) -> IndexedEqRel:
    return IndexedEqRel(H, N, (discrete(N.size),) * H.size)


def check_admissible(E: IndexedEqRel) -> Verdict:
    """Check the three admissibility conditions in order.

    Witnesses: ``(1, h, n, n2, None)`` for a non-discrete identity index,
    ``(2, h, n, n2, x)`` for a failed left translation by x in N, and
    ``(3, h, n, n2, y)`` for a failed right-index move h -> hy.
    """
    H, N = E.H, E.N
    one = H.identity
    pairs = E.related_pairs
    if pairs[one]:
        n, n2 = pairs[one][0]
        return Verdict(False, (1, one, n, n2, None))
    nt = N.table
    for h in H.elements:
        p = E.partitions[h]
        for n, n2 in pairs[h]:
            for x in N.elements:
                if p[nt[x][n]] != p[nt[x][n2]]:
                    return Verdict(False, (2, h, n, n2, x))
    ht = H.table
    for h in H.elements:
        for n, n2 in pairs[h]:
            for y in H.elements:
                if not E.related(ht[h][y], n, n2):
                    return Verdict(False, (3, h, n, n2, y))
    return PASS


def _left_stable(N: FiniteMonoid, p: Partition) -> bool:
    nt = N.table
    for n in N.elements:
        r = p[n]
        if r == n:
            continue
        for x in N.elements:
            if p[nt[x][n]] != p[nt[x][r]]:
                return False
    return True


def enumerate_admissible(H: FiniteMonoid, N: FiniteMonoid) -> list[IndexedEqRel]:
    """Every admissible H-indexed relation on N, sorted by partition encoding."""
    require_enum(H, N)
    # labels and names ride along in the key so cached relations carry the caller's monoids
    return list(_admissible(H, N, H.labels, N.labels, H.name, N.name))


@lru_cache(maxsize=256)
def _admissible(H: FiniteMonoid, N: FiniteMonoid, *_key) -> tuple[IndexedEqRel, ...]:
    stable = [p for p in set_partitions(N.size) if _left_stable(N, p)]
    per_index = []
    for h in H.elements:
        per_index.append([discrete(N.size)] if h == H.identity else stable)
    ht = H.table
    out = []
    for parts in product(*per_index):
        ok = all(
            partition_refines(parts[h], parts[ht[h][y]]) for h in H.elements for y in H.elements
        )
        if ok:
            out.append(IndexedEqRel(H, N, parts))
    out.sort()
    return tuple(out)


def refines(e1: IndexedEqRel, e2: IndexedEqRel) -> bool:
    """e1 is contained in e2 at every index."""
    _same_shape(e1, e2)
    return all(partition_refines(p, q) for p, q in zip(e1.partitions, e2.partitions))


def meet(e1: IndexedEqRel, e2: IndexedEqRel) -> IndexedEqRel:
    _same_shape(e1, e2)
    return IndexedEqRel(e1.H, e1.N, tuple(map(partition_meet, e1.partitions, e2.partitions)))


def join(e1: IndexedEqRel, e2: IndexedEqRel) -> IndexedEqRel:
    """Pointwise transitive closure of the union."""
    _same_shape(e1, e2)
    return IndexedEqRel(e1.H, e1.N, tuple(map(partition_join, e1.partitions, e2.partitions)))


def right_completable(H: FiniteMonoid) -> tuple[tuple[int, ...], ...]:
    """For each h, the x in H with x*h*y = 1 for some y."""
    ht, one = H.table, H.identity
    out = []
    for h in H.elements:
        out.append(tuple(x for x in H.elements if any(ht[ht[x][h]][y] == one for y in H.elements)))
    return tuple(out)


def coarse_equivalence(alpha) -> IndexedEqRel:
    """The coarse relation of a candidate action.

    n ~h n' iff alpha(x, n) = alpha(x, n') for every x that can be completed
    to x*h*y = 1.
    """
    H, N, t = alpha.H, alpha.N, alpha.table
    xs = right_completable(H)
    parts = []
    for h in H.elements:
        keys = [tuple(t[x][n] for x in xs[h]) for n in N.elements]
        parts.append(canonical_partition(keys))
    return IndexedEqRel(H, N, tuple(parts))
