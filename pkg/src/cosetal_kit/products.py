"""Weak semidirect and twisted products, and the split/cosetal predicates."""
from __future__ import annotations

from dataclasses import dataclass

from .actions import CandidateAction, CompatiblePair, check_compatible
from .cohomology import check_factor_set, kernel_group
from .errors import (
    IncompatiblePair,
    NotExtension,
    NotFactorSet,
    NotSplitExtension,
    TheoremCheckFailed,
)
from .monoid import FiniteMonoid, check_homomorphism, check_monoid
from .presentation import ExtensionPresentation, check_extension
from .relations import IndexedEqRel, check_admissible


@dataclass(frozen=True, eq=False)
class WSDMonoid:
    """The monoid on the disjoint union of the quotients N/~h.

    ``carrier[i]`` is ``(rep, h)`` where rep is the least element of the class.
    """

    relation: IndexedEqRel
    action: CandidateAction
    factor_set: tuple | None
    carrier: tuple[tuple[int, int], ...]
    monoid: FiniteMonoid

    def index(self, n: int, h: int) -> int:
        """Position of the element ([n], h)."""
        return self._pos[(self.relation.rep(h, n), h)]

    @property
    def _pos(self):
        pos = self.__dict__.get("_pos_cache")
        if pos is None:
            pos = {c: i for i, c in enumerate(self.carrier)}
            self.__dict__["_pos_cache"] = pos
        return pos


def _build(E: IndexedEqRel, phi: CandidateAction, g, name: str) -> WSDMonoid:
    H, N = E.H, E.N
    ht, nt, t = H.table, N.table, phi.table
    carrier = tuple((r, h) for h in H.elements for r in E.classes(h))
    pos = {c: i for i, c in enumerate(carrier)}
    members = E.class_members
    table = []
    for n, h in carrier:
        row = []
        for n2, h2 in carrier:
            hh = ht[h][h2]
            p = E.partitions[hh]
            # the product must not depend on the chosen class members
            results = set()
            for a in members[h][n]:
                for b in members[h2][n2]:
                    v = nt[a][t[h][b]]
                    if g is not None:
                        v = nt[v][g[h][h2]]
                    results.add(p[v])
            if len(results) != 1:
                raise TheoremCheckFailed(
                    f"product of ([{n}],{h}) and ([{n2}],{h2}) depends on representatives"
                )
            row.append(pos[(results.pop(), hh)])
        table.append(row)
    one = pos[(E.rep(H.identity, N.identity), H.identity)]
    labels = [f"[{N.label(n)}]{H.label(h)}" for n, h in carrier]
    report = check_monoid(table, one)
    if not report:
        raise TheoremCheckFailed(f"{name} is not a monoid: {report.violation}")
    return WSDMonoid(E, phi, g, carrier, FiniteMonoid(table, one, labels, name))


def _require_pair(E: IndexedEqRel, phi: CandidateAction):
    if not check_admissible(E):
        raise IncompatiblePair("relation is not admissible")
    if not check_compatible(phi, E):
        raise IncompatiblePair("action is not compatible with the relation")


def weak_semidirect(E: IndexedEqRel, phi: CandidateAction) -> WSDMonoid:
    """([n], h)([n'], h') = ([n phi(h, n')], hh'); N may be any monoid."""
    _require_pair(E, phi)
    return _build(E, phi, None, f"{E.N.name}x|{E.H.name}")


def twisted_product(E: IndexedEqRel, phi: CandidateAction, g) -> WSDMonoid:
    """([n], h)([n'], h') = ([n phi(h, n') g(h, h')], hh') for an abelian group N."""
    _require_pair(E, phi)
    pair = CompatiblePair(E, phi)
    kernel_group(pair)
    g = tuple(tuple(r) for r in g)
    v = check_factor_set(g, pair)
    if not v:
        raise NotFactorSet(f"not a factor set: {v.witness}")
    return _build(E, phi, g, f"{E.N.name}x|^g{E.H.name}")


def extension_of(w: WSDMonoid, split: bool | None = None) -> ExtensionPresentation:
    """k(n) = ([n], 1), e([n], h) = h, s(h) = ([1], h)."""
    E = w.relation
    H, N = E.H, E.N
    k = tuple(w.index(n, H.identity) for n in N.elements)
    e = tuple(h for _, h in w.carrier)
    s = tuple(w.index(N.identity, h) for h in H.elements)
    return ExtensionPresentation.from_arrays(N, w.monoid, H, k, e, s, w.monoid.name)


def twisted_extension(pair: CompatiblePair, g=None) -> ExtensionPresentation:
    if g is None:
        return extension_of(weak_semidirect(pair.relation, pair.action))
    return extension_of(twisted_product(pair.relation, pair.action, g))


def induced_split_extension(E: IndexedEqRel, phi: CandidateAction) -> ExtensionPresentation:
    ext = extension_of(weak_semidirect(E, phi))
    if not check_homomorphism(ext.section_map):
        raise TheoremCheckFailed("s(h) = ([1], h) is not a homomorphism")
    return ext


def _is_split(ext: ExtensionPresentation) -> bool:
    if ext.s is None or not check_homomorphism(ext.section_map):
        return False
    if any(ext.e.image[ext.s[h]] != h for h in ext.H.elements):
        return False
    one = ext.H.identity
    return all(ext.e.image[x] == one for x in ext.k.image)


def check_weakly_schreier(ext: ExtensionPresentation) -> bool:
    """Every g factors as k(n) s(e(g))."""
    if not _is_split(ext):
        raise NotSplitExtension("extension has no homomorphic section splitting e")
    G, k, e, s = ext.G, ext.k.image, ext.e.image, ext.s
    gt = G.table
    for g in G.elements:
        target = s[e[g]]
        if not any(gt[k[n]][target] == g for n in ext.N.elements):
            return False
    return True


def _coset_counts(ext: ExtensionPresentation):
    """For each fibre pair (g, g'), how many n give k(n) g' = g."""
    if not check_extension(ext):
        raise NotExtension("k is not the kernel of e or e is not the cokernel of k")
    gt, k = ext.G.table, ext.k.image
    for fib in ext.fibres:
        for g2 in fib:
            hits: dict[int, int] = {}
            for n in ext.N.elements:
                x = gt[k[n]][g2]
                hits[x] = hits.get(x, 0) + 1
            for g in fib:
                yield g, g2, hits.get(g, 0)


def check_cosetal(ext: ExtensionPresentation) -> bool:
    """e(g) = e(g') implies g = k(n) g' for some n."""
    return all(c >= 1 for _, _, c in _coset_counts(ext))


def check_special_schreier(ext: ExtensionPresentation) -> bool:
    """The cosetal witness exists and is unique for every fibre pair."""
    return all(c == 1 for _, _, c in _coset_counts(ext))
