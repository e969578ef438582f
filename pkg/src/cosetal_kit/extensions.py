"""Cosetal extensions: invariants, reconstruction and morphisms.

Two routes to morphisms are kept side by side. :func:`hom_set` builds them
from crossed homomorphisms and the canonical collapse map; the brute-force
:func:`extension_morphisms` searches all fibre-respecting maps and never
looks at invariants. Tests compare the two.
"""
from __future__ import annotations

from dataclasses import dataclass

from .actions import (
    CandidateAction,
    CompatiblePair,
    make_pair,
    wact_leq,
)
from .cohomology import (
    CohomologyGroup,
    canonical_factor_set,
    check_factor_set,
    cohomology_group,
    factor_sets_equivalent,
    kernel_group,
    unit_preserving_maps,
)
from .errors import (
    ContextMismatch,
    InvariantsDiffer,
    NotComparable,
    NotCosetal,
    TheoremCheckFailed,
)
from .limits import require_enum
from .monoid import MonoidMap, check_homomorphism
from .presentation import (
    ExtensionPresentation,
    alternate_section,
    check_extension,
    default_section,
)
from .products import check_cosetal, extension_of, twisted_product
from .relations import IndexedEqRel
from .verdict import PASS, Verdict

__all__ = [
    "CosetalInvariants",
    "Z1Group",
    "canonical_lambda",
    "check_crossed_hom",
    "check_extension",
    "check_extension_morphism",
    "check_short_five",
    "extension_morphisms",
    "extensions_isomorphic",
    "extract_invariants",
    "hom_set",
    "hom_set_labelled",
    "morphism_condition",
    "reconstruct",
    "z1_group",
]


@dataclass(frozen=True, eq=False)
class CosetalInvariants:
    relation: IndexedEqRel
    # the action as read off the chosen section
    action: CandidateAction
    # (E, [phi]) with the canonical representative
    pair: CompatiblePair
    # g_s for the chosen section, unreduced
    factor_set: tuple
    group: CohomologyGroup
    cls: int
    section: tuple[int, ...]

    @property
    def key(self):
        return (self.pair.key, self.cls)


def _solve_left(ext: ExtensionPresentation, target: int, right: int) -> int | None:
    """Least n with k(n) * right = target."""
    gt, k = ext.G.table, ext.k.image
    return next((n for n in ext.N.elements if gt[k[n]][right] == target), None)


def _read_off(ext: ExtensionPresentation, s: tuple[int, ...]):
    H, N, G = ext.H, ext.N, ext.G
    gt, k, ht = G.table, ext.k.image, H.table
    parts = []
    for h in H.elements:
        keys = [gt[k[n]][s[h]] for n in N.elements]
        parts.append(keys)
    E = IndexedEqRel.from_class_ids(H, N, parts)
    phi = []
    for h in H.elements:
        row = []
        for n in N.elements:
            x = _solve_left(ext, gt[s[h]][k[n]], s[h])
            if x is None:
                raise NotCosetal(f"no n with k(n)s(h) = s(h)k({N.label(n)}) at h = {H.label(h)}")
            row.append(x)
        phi.append(tuple(row))
    g = []
    for h in H.elements:
        row = []
        for h2 in H.elements:
            x = _solve_left(ext, gt[s[h]][s[h2]], s[ht[h][h2]])
            if x is None:
                raise NotCosetal("no factor-set value for a pair of section elements")
            row.append(x)
        g.append(tuple(row))
    return E, CandidateAction(H, N, tuple(phi)), tuple(g)


def extract_invariants(
    ext: ExtensionPresentation, section=None, verify_section_independence: bool = True
) -> CosetalInvariants:
    """Read (E, [phi], [g]) off a cosetal extension with abelian group kernel."""
    if not check_cosetal(ext):
        raise NotCosetal("extension is not cosetal")
    s = default_section(ext) if section is None else tuple(section)
    E, phi, g = _read_off(ext, s)
    pair = make_pair(E, phi)
    kernel_group(pair)
    v = check_factor_set(g, pair)
    if not v:
        raise TheoremCheckFailed(f"g_s is not a factor set: {v.witness}")
    group = cohomology_group(pair)
    inv = CosetalInvariants(E, phi, pair, g, group, group.class_of(g), s)
    if verify_section_independence:
        other = alternate_section(ext)
        if other != s:
            alt = extract_invariants(ext, other, verify_section_independence=False)
            if alt.key != inv.key:
                raise TheoremCheckFailed("invariants depend on the chosen section")
    return inv


def invariants_agree(a: CosetalInvariants, b: CosetalInvariants) -> bool:
    return a.key == b.key


def reconstruct(ext: ExtensionPresentation, inv: CosetalInvariants | None = None):
    """Isomorphism ([n], h) -> k(n) s(h) from the twisted product onto G.

    Returns ``(wsd, iso)`` where ``wsd`` is the twisted product of the
    extracted invariants.
    """
    inv = extract_invariants(ext) if inv is None else inv
    w = twisted_product(inv.pair.relation, inv.pair.action, inv.factor_set)
    gt, k, s = ext.G.table, ext.k.image, inv.section
    image = tuple(gt[k[n]][s[h]] for n, h in w.carrier)
    f = MonoidMap(w.monoid, ext.G, image)
    if not (f.is_injective and f.is_surjective and check_homomorphism(f)):
        raise TheoremCheckFailed("k(n)s(h) is not an isomorphism from the twisted product")
    if not check_extension_morphism(f, extension_of(w), ext):
        raise TheoremCheckFailed("reconstruction does not commute with k and e")
    return w, f


def check_extension_morphism(
    f: MonoidMap, ext1: ExtensionPresentation, ext2: ExtensionPresentation
) -> bool:
    """Homomorphism G1 -> G2 with f k1 = k2 and e2 f = e1."""
    if f.domain != ext1.G or f.codomain != ext2.G:
        return False
    if not check_homomorphism(f):
        return False
    if any(f.image[a] != b for a, b in zip(ext1.k.image, ext2.k.image)):
        return False
    return all(ext2.e.image[f.image[x]] == ext1.e.image[x] for x in ext1.G.elements)


def canonical_lambda(g, src: CompatiblePair, tgt: CompatiblePair) -> MonoidMap:
    """The class-collapse map ([n], h) -> ([n], h) between twisted products."""
    if not wact_leq(src, tgt):
        raise NotComparable("source pair is not below target pair")
    w1 = twisted_product(src.relation, src.action, g)
    w2 = twisted_product(tgt.relation, tgt.action, g)
    image = tuple(w2.index(n, h) for n, h in w1.carrier)
    lam = MonoidMap(w1.monoid, w2.monoid, image)
    if not check_extension_morphism(lam, extension_of(w1), extension_of(w2)):
        raise TheoremCheckFailed("canonical map is not a morphism of extensions")
    return lam


# -- crossed homomorphisms ---------------------------------------------------


def check_crossed_hom(t, pair: CompatiblePair) -> Verdict:
    """t(hh') ~hh' t(h) + phi(h, t(h')), with t(1) = 1.

    Witness ``("unit",)`` when t(1) != 1, else ``(h, h2)``.
    """
    A = kernel_group(pair)
    H, P, phi = pair.H, pair.relation.partitions, pair.action.table
    ht = H.table
    if t[H.identity] != A.zero:
        return Verdict(False, ("unit",))
    for h in H.elements:
        for h2 in H.elements:
            hh = ht[h][h2]
            p = P[hh]
            if p[t[hh]] != p[A.add(t[h], phi[h][t[h2]])]:
                return Verdict(False, (h, h2))
    return PASS


@dataclass(frozen=True)
class Z1Group:
    pair: CompatiblePair
    # cellwise class representatives, sorted
    classes: tuple[tuple[int, ...], ...]
    add: tuple[tuple[int, ...], ...]
    zero: int

    @property
    def order(self) -> int:
        return len(self.classes)

    def class_of(self, t) -> int:
        P = self.pair.relation.partitions
        return self.classes.index(tuple(P[h][x] for h, x in enumerate(t)))


def z1_group(pair: CompatiblePair) -> Z1Group:
    require_enum(pair.H, pair.N)
    A = kernel_group(pair)
    P = pair.relation.partitions
    reps = set()
    for t in unit_preserving_maps(pair.H, pair.N):
        if check_crossed_hom(t, pair):
            reps.add(tuple(P[h][x] for h, x in enumerate(t)))
    classes = tuple(sorted(reps))
    pos = {c: i for i, c in enumerate(classes)}
    add = tuple(
        tuple(pos[tuple(P[h][A.add(a, b)] for h, (a, b) in enumerate(zip(c1, c2)))] for c2 in classes)
        for c1 in classes
    )
    zero = pos[tuple(P[h][A.zero] for h in pair.H.elements)]
    return Z1Group(pair, classes, add, zero)


# -- morphisms ---------------------------------------------------------------


def _same_base(ext1: ExtensionPresentation, ext2: ExtensionPresentation):
    if ext1.N != ext2.N or ext1.H != ext2.H:
        raise ContextMismatch("extensions have different kernels or cokernels")


def morphism_condition(inv1: CosetalInvariants, inv2: CosetalInvariants) -> bool:
    """(E1, [phi1]) <= (E2, [phi2]) and [g1] = [g2] in H^2 of the codomain context."""
    if not wact_leq(inv1.pair, inv2.pair):
        return False
    return inv2.group.class_of(inv1.factor_set) == inv2.cls


def hom_set_labelled(
    ext1: ExtensionPresentation,
    ext2: ExtensionPresentation,
    inv1: CosetalInvariants | None = None,
    inv2: CosetalInvariants | None = None,
):
    """Morphisms ext1 -> ext2 paired with the crossed-homomorphism class they come from.

    Each map is k1(n) s1(h) -> k2(t*(h) + n + t(h)) s2(h), where t moves the
    codomain factor set onto the domain one and t* runs over Z^1 of the
    codomain context; t* = 0 is the canonical collapse map.
    """
    _same_base(ext1, ext2)
    inv1 = extract_invariants(ext1) if inv1 is None else inv1
    inv2 = extract_invariants(ext2) if inv2 is None else inv2
    if not morphism_condition(inv1, inv2):
        return []
    A = kernel_group(inv2.pair)
    shift = factor_sets_equivalent(inv1.factor_set, inv2.factor_set, inv2.pair)
    if not shift:
        raise TheoremCheckFailed("equal classes but no inner factor set relates them")
    t = shift.witness
    if canonical_factor_set(inv1.factor_set, inv2.pair) == canonical_factor_set(inv2.factor_set, inv2.pair):
        # no shift needed, so the zero crossed homomorphism gives the collapse map
        t = tuple(A.zero for _ in ext1.H.elements)
    z1 = z1_group(inv2.pair)
    gt2 = ext2.G.table
    k2, s1, s2 = ext2.k.image, inv1.section, inv2.section
    e1 = ext1.e.image
    # write each x in G1 as k1(n) s1(e1(x))
    decomp = []
    for x in ext1.G.elements:
        h = e1[x]
        n = _solve_left(ext1, x, s1[h])
        decomp.append((n, h))
    out = []
    for star in z1.classes:
        image = tuple(gt2[k2[A.add(A.add(star[h], n), t[h])]][s2[h]] for n, h in decomp)
        f = MonoidMap(ext1.G, ext2.G, image)
        if not check_extension_morphism(f, ext1, ext2):
            raise TheoremCheckFailed(f"crossed homomorphism {star} did not give a morphism")
        out.append((star, f))
    if len({f.image for _, f in out}) != len(out):
        raise TheoremCheckFailed("distinct crossed-homomorphism classes gave the same morphism")
    return out


def hom_set(ext1: ExtensionPresentation, ext2: ExtensionPresentation, inv1=None, inv2=None) -> list[MonoidMap]:
    return [f for _, f in hom_set_labelled(ext1, ext2, inv1, inv2)]


def extension_morphisms(
    ext1: ExtensionPresentation,
    ext2: ExtensionPresentation,
    bijective: bool = False,
    first_only: bool = False,
) -> list[MonoidMap]:
    """Brute-force search for all morphisms of extensions ext1 -> ext2.

    Images of k1(n) are pinned to k2(n); the rest are chosen inside the right
    e2-fibre, and every choice is closed under products before branching.
    """
    _same_base(ext1, ext2)
    G1, G2 = ext1.G, ext2.G
    if bijective and G1.size != G2.size:
        return []
    t1, t2 = G1.table, G2.table
    e1, e2 = ext1.e.image, ext2.e.image
    fib2 = ext2.fibres

    def assign(f, used, pending):
        while pending:
            a, b = pending.pop()
            if f[a] is None:
                if e2[b] != e1[a] or (bijective and b in used):
                    return False
                f[a] = b
                used.add(b)
                for c in G1.elements:
                    if f[c] is not None:
                        pending.append((t1[a][c], t2[b][f[c]]))
                        pending.append((t1[c][a], t2[f[c]][b]))
            elif f[a] != b:
                return False
        return True

    f0: list = [None] * G1.size
    used0: set = set()
    if not assign(f0, used0, [(a, b) for a, b in zip(ext1.k.image, ext2.k.image)]):
        return []
    found: list[tuple[int, ...]] = []

    def rec(f, used):
        free = next((x for x in G1.elements if f[x] is None), None)
        if free is None:
            found.append(tuple(f))
            return first_only
        for y in fib2[e1[free]]:
            if bijective and y in used:
                continue
            f2, used2 = list(f), set(used)
            if assign(f2, used2, [(free, y)]) and rec(f2, used2):
                return True
        return False

    rec(f0, used0)
    maps = [MonoidMap(G1, G2, im) for im in sorted(found)]
    for m in maps:
        if not check_extension_morphism(m, ext1, ext2):
            raise TheoremCheckFailed("search produced a non-morphism")
    return maps


def extensions_isomorphic(ext1: ExtensionPresentation, ext2: ExtensionPresentation) -> MonoidMap | None:
    hits = extension_morphisms(ext1, ext2, bijective=True, first_only=True)
    return hits[0] if hits else None


def check_short_five(f: MonoidMap, ext1: ExtensionPresentation, ext2: ExtensionPresentation, inv1=None, inv2=None):
    """A morphism between extensions with the same (E, [phi]) is invertible.

    Returns ``(True, inverse)`` when the explicit inverse
    k2(n) s2(h) -> k1(n - f*(h)) s1(h) checks out, else ``(False, None)``.
    """
    _same_base(ext1, ext2)
    inv1 = extract_invariants(ext1) if inv1 is None else inv1
    inv2 = extract_invariants(ext2) if inv2 is None else inv2
    if inv1.pair != inv2.pair:
        raise InvariantsDiffer("extensions have different (E, [phi])")
    if not check_extension_morphism(f, ext1, ext2):
        return False, None
    A = kernel_group(inv1.pair)
    s1, s2 = inv1.section, inv2.section
    k1 = ext1.k.image
    fstar = [_solve_left(ext2, f.image[s1[h]], s2[h]) for h in ext1.H.elements]
    if any(x is None for x in fstar):
        return False, None
    image = []
    for y in ext2.G.elements:
        h = ext2.e.image[y]
        n = _solve_left(ext2, y, s2[h])
        image.append(ext1.G.table[k1[A.sub(n, fstar[h])]][s1[h]])
    g = MonoidMap(ext2.G, ext1.G, tuple(image))
    ok = (
        check_extension_morphism(g, ext2, ext1)
        and all(g.image[f.image[x]] == x for x in ext1.G.elements)
        and all(f.image[g.image[y]] == y for y in ext2.G.elements)
    )
    return (True, g) if ok else (False, None)
