"""Brute-force oracles that avoid every shortcut the main pipeline takes.

``oracle_enumerate_factor_sets`` scans all |N|^(|H|^2) tables with no
pinning of unit cells and no reduction modulo E.
``oracle_enumerate_cosetal_extensions`` builds one twisted product per raw
factor set and buckets them with a plain isomorphism search; invariants are
attached to the buckets afterwards, never used to form them.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .actions import CompatiblePair, wact_poset
from .cohomology import check_factor_set, kernel_group
from .extensions import CosetalInvariants, extensions_isomorphic, extract_invariants
from .limits import get_limits, require_enum
from .presentation import ExtensionPresentation
from .products import extension_of, twisted_product

__all__ = [
    "OracleBucket",
    "oracle_enumerate_cosetal_extensions",
    "oracle_enumerate_factor_sets",
    "oracle_raw_cocycles",
]


def _all_tables(pair: CompatiblePair):
    m, n = pair.H.size, pair.N.size
    for flat in product(range(n), repeat=m * m):
        yield tuple(tuple(flat[i * m:(i + 1) * m]) for i in range(m))


def _require_oracle(pair: CompatiblePair):
    require_enum(pair.H, cap=get_limits().max_oracle_h)
    require_enum(pair.N)
    kernel_group(pair)


def oracle_enumerate_factor_sets(pair: CompatiblePair) -> list[tuple]:
    """Every table passing check_factor_set, in lexicographic order."""
    _require_oracle(pair)
    return [g for g in _all_tables(pair) if check_factor_set(g, pair)]


def oracle_raw_cocycles(pair: CompatiblePair) -> list[tuple]:
    """Tables meeting the cocycle condition alone, unit condition ignored."""
    _require_oracle(pair)
    return [g for g in _all_tables(pair) if _cocycle_only(g, pair)]


def _cocycle_only(g, pair: CompatiblePair) -> bool:
    A = kernel_group(pair)
    H, P, phi = pair.H, pair.relation.partitions, pair.action.table
    ht = H.table
    for x, y, z in product(H.elements, repeat=3):
        xy, yz = ht[x][y], ht[y][z]
        p = P[ht[xy][z]]
        if p[A.add(g[x][y], g[xy][z])] != p[A.add(phi[x][g[y][z]], g[x][yz])]:
            return False
    return True


@dataclass
class OracleBucket:
    representative: ExtensionPresentation
    # (WAct index, raw factor set) that produced each member
    sources: list[tuple[int, tuple]]
    invariants: CosetalInvariants | None = None

    @property
    def size(self) -> int:
        return len(self.sources)


def _shape_key(ext: ExtensionPresentation):
    """Isomorphism-invariant fingerprint used only to skip hopeless comparisons."""
    G = ext.G
    fib = tuple(len(f) for f in ext.fibres)
    idem = len(G.idempotents)
    return (G.size, fib, idem)


def oracle_enumerate_cosetal_extensions(H, N, attach_invariants: bool = True) -> list[OracleBucket]:
    """Iso-classes of cosetal extensions of N by H, by exhaustive bucketing."""
    require_enum(H, cap=get_limits().max_oracle_h)
    require_enum(N)
    poset = wact_poset(H, N)
    buckets: list[OracleBucket] = []
    keys: list = []
    seen_tables: dict = {}
    for i, pair in enumerate(poset.elements):
        for g in oracle_enumerate_factor_sets(pair):
            w = twisted_product(pair.relation, pair.action, g)
            ext = extension_of(w)
            exact = (ext.G.table, ext.k.image, ext.e.image)
            if exact in seen_tables:
                buckets[seen_tables[exact]].sources.append((i, g))
                continue
            key = _shape_key(ext)
            for b, bucket in enumerate(buckets):
                if keys[b] == key and extensions_isomorphic(ext, bucket.representative) is not None:
                    bucket.sources.append((i, g))
                    seen_tables[exact] = b
                    break
            else:
                seen_tables[exact] = len(buckets)
                buckets.append(OracleBucket(ext, [(i, g)]))
                keys.append(key)
    if attach_invariants:
        for bucket in buckets:
            bucket.invariants = extract_invariants(bucket.representative)
    return buckets
