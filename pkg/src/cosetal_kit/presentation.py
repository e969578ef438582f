"""Extension diagrams N -> G -> H given by index arrays."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import NotHomomorphism, SizeMismatch
from .monoid import FiniteMonoid, MonoidMap, check_homomorphism, cokernel, kernel


@dataclass(frozen=True, eq=False)
class ExtensionPresentation:
    N: FiniteMonoid
    G: FiniteMonoid
    H: FiniteMonoid
    k: MonoidMap
    e: MonoidMap
    # optional section of e (a homomorphism for split extensions, else any set map)
    s: tuple[int, ...] | None = None
    name: str = ""

    def __post_init__(self):
        if self.k.domain != self.N or self.k.codomain != self.G:
            raise SizeMismatch("k must map N to G")
        if self.e.domain != self.G or self.e.codomain != self.H:
            raise SizeMismatch("e must map G to H")
        if self.s is not None:
            s = tuple(int(x) for x in self.s)
            if len(s) != self.H.size or any(not 0 <= x < self.G.size for x in s):
                raise SizeMismatch("section must send each element of H into G")
            object.__setattr__(self, "s", s)

    @classmethod
    def from_arrays(cls, N, G, H, k, e, s=None, name="") -> ExtensionPresentation:
        return cls(N, G, H, MonoidMap(N, G, k), MonoidMap(G, H, e), s, name)

    def __repr__(self):
        return f"ExtensionPresentation({self.name or '?'}: |N|={self.N.size}, |G|={self.G.size}, |H|={self.H.size})"

    @cached_property
    def fibres(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in self.H.elements]
        for g, h in enumerate(self.e.image):
            out[h].append(g)
        return tuple(tuple(f) for f in out)

    @cached_property
    def section_map(self) -> MonoidMap | None:
        return None if self.s is None else MonoidMap(self.H, self.G, self.s)

    def with_section(self, s) -> ExtensionPresentation:
        return ExtensionPresentation(self.N, self.G, self.H, self.k, self.e, s, self.name)

    def require_homs(self):
        if not check_homomorphism(self.k):
            raise NotHomomorphism("k is not a homomorphism")
        if not check_homomorphism(self.e):
            raise NotHomomorphism("e is not a homomorphism")


def default_section(ext: ExtensionPresentation) -> tuple[int, ...]:
    """Least element of each fibre, except that the identity of H goes to 1."""
    out = []
    for h, fib in enumerate(ext.fibres):
        if not fib:
            raise SizeMismatch(f"e is not surjective (nothing over {ext.H.label(h)})")
        out.append(ext.G.identity if h == ext.H.identity else fib[0])
    return tuple(out)


def alternate_section(ext: ExtensionPresentation) -> tuple[int, ...]:
    """Greatest element of each fibre, identity still sent to 1."""
    return tuple(
        ext.G.identity if h == ext.H.identity else fib[-1] for h, fib in enumerate(ext.fibres)
    )


def all_sections(ext: ExtensionPresentation):
    """Every unit-preserving set-theoretic section of e."""
    choices = [
        (ext.G.identity,) if h == ext.H.identity else fib for h, fib in enumerate(ext.fibres)
    ]
    for s in product(*choices):
        yield tuple(s)


def check_extension(ext: ExtensionPresentation) -> bool:
    """k is the kernel of e and e is the cokernel of k.

    Both halves are computed: the kernel of e must be exactly the image of an
    injective k, and the cokernel congruence of k must have the e-fibres as
    its classes.
    """
    ext.require_homs()
    if not ext.k.is_injective or not ext.e.is_surjective:
        return False
    _, incl = kernel(ext.e)
    if sorted(incl.image) != sorted(ext.k.image):
        return False
    cong, _, _ = cokernel(ext.k)
    e = ext.e.image
    return all(
        (cong.partition[a] == cong.partition[b]) == (e[a] == e[b])
        for a in ext.G.elements
        for b in ext.G.elements
    )
