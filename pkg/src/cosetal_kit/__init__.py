"""Finite monoid extensions with abelian group kernels.

Compatible pairs (E, [phi]), weak semidirect and twisted products, the
second cohomology groups H^2(H, N, E, [phi]), morphisms of cosetal
extensions, and the inverse-monoid / groupoid structures built from them.
"""
from . import fixtures
from .actions import (
    CandidateAction,
    CompatiblePair,
    WActPoset,
    check_compatible,
    enumerate_compatible_relations,
    is_valid,
    make_pair,
    valid_actions,
    wact_leq,
    wact_poset,
)
from .classify import classify
from .cohomology import (
    CohomologyGroup,
    baer_sum,
    check_factor_set,
    cohomology_group,
    enumerate_factor_sets,
    factor_sets_equivalent,
    inner_factor_set,
    l_map,
    pushforward_l,
)
from .errors import CosetalError, InputError, TheoremCheckFailed
from .extensions import (
    CosetalInvariants,
    canonical_lambda,
    check_crossed_hom,
    check_extension,
    check_extension_morphism,
    check_short_five,
    extension_morphisms,
    extensions_isomorphic,
    extract_invariants,
    hom_set,
    reconstruct,
    z1_group,
)
from .higher import (
    FiniteCategory,
    TildeH2Monoid,
    check_inverse_monoid,
    hat_h2_groupoid,
    tilde_h2_category,
    tilde_h2_monoid,
)
from .limits import limits
from .monoid import FiniteMonoid, MonoidMap, check_homomorphism, check_monoid
from .oracle import oracle_enumerate_cosetal_extensions, oracle_enumerate_factor_sets
from .presentation import ExtensionPresentation
from .products import (
    check_cosetal,
    check_special_schreier,
    check_weakly_schreier,
    induced_split_extension,
    twisted_product,
    weak_semidirect,
)
from .relations import IndexedEqRel, check_admissible, coarse_equivalence, enumerate_admissible

__version__ = "0.1.0"
