"""Independent brute-force oracles and hand-built examples for the tests.

Nothing here calls the enumeration or checking code of the package: each
oracle is a literal transcription of a definition, run over every candidate.
"""
from __future__ import annotations

from itertools import product

from cosetal_kit import fixtures as F
from cosetal_kit.monoid import FiniteMonoid
from cosetal_kit.presentation import ExtensionPresentation

TWO = F.get("2")  # T = 0 (identity), B = 1
Z2, Z3, Z4 = F.get("z2"), F.get("z3"), F.get("z4")
K4, M3, S3, LZ, ONE = F.get("k4"), F.get("m3"), F.get("s3"), F.get("lz2+1"), F.get("1")

T, B = 0, 1

# fixture pairs small enough for the exhaustive oracles
SMALL_PAIRS = [
    (ONE, Z2), (ONE, Z3), (TWO, Z2), (TWO, Z3), (Z2, Z2), (Z2, Z3),
    (Z3, Z2), (M3, Z2), (LZ, Z2), (TWO, TWO), (Z2, TWO), (TWO, M3),
]


def brute_is_monoid(table, e) -> bool:
    n = len(table)
    if any(table[e][a] != a or table[a][e] != a for a in range(n)):
        return False
    return all(
        table[table[a][b]][c] == table[a][table[b][c]]
        for a in range(n) for b in range(n) for c in range(n)
    )


def set_partitions_rgs(n):
    """Restricted growth strings, converted to class-of-minimum form."""
    def rec(prefix, k):
        if len(prefix) == n:
            yield prefix
            return
        for c in range(k + 1):
            yield from rec(prefix + [c], max(k, c + 1))

    for rgs in rec([], 0):
        first = {}
        yield tuple(first.setdefault(c, i) for i, c in enumerate(rgs))


def rel(p, h, a, b):
    return p[h][a] == p[h][b]


def brute_admissible(parts, H, N) -> bool:
    one = H.identity
    for a in N.elements:
        for b in N.elements:
            if a != b and rel(parts, one, a, b):
                return False
            for h in H.elements:
                if not rel(parts, h, a, b):
                    continue
                for x in N.elements:
                    if not rel(parts, h, N.table[x][a], N.table[x][b]):
                        return False
                for y in H.elements:
                    if not rel(parts, H.table[h][y], a, b):
                        return False
    return True


def brute_admissible_relations(H, N):
    allp = list(set_partitions_rgs(N.size))
    return sorted(
        parts for parts in product(allp, repeat=H.size) if brute_admissible(parts, H, N)
    )


def brute_compatible(t, parts, H, N) -> bool:
    """The six conditions, one loop each, straight from their statements."""
    nt, ht, one_h, one_n = N.table, H.table, H.identity, N.identity
    for h in H.elements:
        for n in N.elements:
            for n2 in N.elements:
                if not rel(parts, h, n, n2):
                    continue
                for x in N.elements:
                    if not rel(parts, h, nt[n][t[h][x]], nt[n2][t[h][x]]):
                        return False
                for x in H.elements:
                    if not rel(parts, ht[x][h], t[x][n], t[x][n2]):
                        return False
    for h in H.elements:
        for n in N.elements:
            for n2 in N.elements:
                if not rel(parts, h, t[h][nt[n][n2]], nt[t[h][n]][t[h][n2]]):
                    return False
    for h in H.elements:
        for h2 in H.elements:
            for n in N.elements:
                if not rel(parts, ht[h][h2], t[ht[h][h2]][n], t[h][t[h2][n]]):
                    return False
    for h in H.elements:
        if not rel(parts, h, t[h][one_n], one_n):
            return False
    return all(rel(parts, one_h, t[one_h][n], n) for n in N.elements)


def all_action_tables(H, N):
    for flat in product(N.elements, repeat=H.size * N.size):
        yield tuple(tuple(flat[h * N.size:(h + 1) * N.size]) for h in H.elements)


def brute_compatible_tables(parts, H, N):
    return sorted(t for t in all_action_tables(H, N) if brute_compatible(t, parts, H, N))


def _neg(N, a):
    return next(b for b in N.elements if N.table[a][b] == N.identity)


def brute_factor_sets(parts, phi, H, N):
    m = H.size
    nt, ht = N.table, H.table
    out = []
    for flat in product(N.elements, repeat=m * m):
        g = [flat[i * m:(i + 1) * m] for i in range(m)]
        ok = all(
            rel(parts, h, g[h][H.identity], N.identity) and rel(parts, h, g[H.identity][h], N.identity)
            for h in H.elements
        )
        ok = ok and all(
            rel(parts, ht[ht[x][y]][z], nt[g[x][y]][g[ht[x][y]][z]], nt[phi[x][g[y][z]]][g[x][ht[y][z]]])
            for x in H.elements for y in H.elements for z in H.elements
        )
        if ok:
            out.append(tuple(tuple(r) for r in g))
    return out


def brute_h2_order(parts, phi, H, N) -> int:
    """Count classes of factor sets under g ~ g' iff (delta t + g') ~ g cellwise."""
    nt, ht = N.table, H.table
    fs = brute_factor_sets(parts, phi, H, N)
    ts = [t for t in product(N.elements, repeat=H.size) if t[H.identity] == N.identity]

    def delta(t):
        return [[nt[nt[phi[h][t[h2]]][_neg(N, t[ht[h][h2]])]][t[h]] for h2 in H.elements] for h in H.elements]

    deltas = [delta(t) for t in ts]

    def equiv(g, g2):
        return any(
            all(rel(parts, ht[h][h2], nt[d[h][h2]][g2[h][h2]], g[h][h2]) for h in H.elements for h2 in H.elements)
            for d in deltas
        )

    reps = []
    for g in fs:
        if not any(equiv(g, r) for r in reps):
            reps.append(g)
    return len(reps)


def brute_crossed_homs(parts, phi, H, N):
    nt, ht = N.table, H.table
    out = []
    for t in product(N.elements, repeat=H.size):
        if t[H.identity] != N.identity:
            continue
        if all(rel(parts, ht[h][h2], t[ht[h][h2]], nt[t[h]][phi[h][t[h2]]]) for h in H.elements for h2 in H.elements):
            out.append(t)
    classes = {tuple(parts[h][x] for h, x in enumerate(t)) for t in out}
    return out, len(classes)


# -- hand-built extensions ------------------------------------------------------


def z4_extension() -> ExtensionPresentation:
    """Z2 -> Z4 -> Z2, k(1) = 2."""
    return ExtensionPresentation.from_arrays(Z2, Z4, Z2, (0, 2), (0, 1, 0, 1))


def klein_extension() -> ExtensionPresentation:
    """Z2 -> Z2 x Z2 -> Z2 with K4 labelled 00, 01, 10, 11."""
    return ExtensionPresentation.from_arrays(Z2, K4, Z2, (0, 1), (0, 0, 1, 1))


def m3_extension() -> ExtensionPresentation:
    """Z2 -> M3 -> 2, with inf over the bottom element."""
    return ExtensionPresentation.from_arrays(Z2, M3, TWO, (0, 1), (T, T, B))


def relabel(m: FiniteMonoid, perm) -> FiniteMonoid:
    """The same monoid with element i renamed perm[i]."""
    inv = [0] * m.size
    for i, p in enumerate(perm):
        inv[p] = i
    table = [[perm[m.table[inv[a]][inv[b]]] for b in m.elements] for a in m.elements]
    return FiniteMonoid(table, perm[m.identity], [m.labels[inv[a]] for a in m.elements], m.name)
