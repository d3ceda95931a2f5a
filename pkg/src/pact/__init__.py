"""Partial actions of finite groups on finite topological spaces."""

from .errors import GuardError, PactError, ValidationError
from .topology import (
    ContinuousMap,
    FiniteSpace,
    discrete,
    indiscrete,
    is_continuous,
    is_embedding,
    is_homeomorphism,
    is_open_map,
    make_space,
    product,
    quotient,
    separation,
    sierpinski,
    space_from_opens,
    subspace,
)
from .groups import FiniteGroup, cyclic, klein_four, make_group, symmetric, trivial_group
from .gamma import (
    PartialAction,
    PartialHomeo,
    check_G_map,
    check_premorphism,
    compose,
    enumerate_gamma,
    global_action,
    invert,
    is_nice,
    leq,
    make_action,
    restrict_global,
)
from .globalization import (
    EnvelopingSpace,
    enveloping_relation,
    globalize,
    open_restriction_globalize,
    verify_globalization,
)
from .embeddings import (
    GammaEmbedding,
    cone_finite,
    function_space,
    hyperspace,
    induce_action,
    open_embedding_gamma,
    product_embedding,
    verify_gamma_embedding,
)
from .funcspace import (
    FuncSpaceBundle,
    build_bundle,
    check_clopen_corollary,
    check_continuity_equiv,
    check_nice_equiv,
    check_t1_t2_equiv,
    j_embed,
    xi_embed,
)
from .numeric import (
    MoebiusElement,
    mobius_apply,
    mobius_axiom_check,
    ray_apply,
    ray_funcspace_check,
    ray_phi_check,
)
from .report import Report
from .corpus import CorpusSpec, generate_corpus
from .serialize import parse_instance

__version__ = "0.1.0"
