"""Exact expansion cocycles on braid groups and independence certificates."""

from .braids import (
    BraidWord,
    PureBraidGen,
    artin_action,
    braids_equal,
    full_twist,
    is_pure,
    last_strand_linking,
    parse_braid,
    permutation,
    pure_gen_braid,
    pure_gen_word,
)
from .certify import (
    Certificate,
    certificate,
    dual_partition,
    exact_rank,
    multiplicity_factor,
    partition_cycles,
    partitions,
    scalar_factor_check,
)
from .chains import (
    BarChain,
    cross,
    embed_chain,
    pair,
    parse_cycle,
    shuffle,
    torus_cycle,
)
from .cochains import (
    BlockEmbedding,
    Cochain,
    GroupElement,
    ProductElement,
    block_layout,
    block_restrict,
    coboundary,
    coeff_action,
    composite_cochain,
    cup,
    hbar_cochain,
    hbar_partition_cochain,
    hp_cochain,
    projection_pullback,
    tau1,
    tau1_cochain,
    unit_cochain,
)
from .magnus import MagnusExpansion, series_inverse
from .suites import SUITES, SuiteReport, run_suite
from .tensors import (
    ExteriorElement,
    HomTensor,
    TruncatedTensor,
    alt_project,
    compose_maps,
    exterior_basis,
)
from .words import (
    AutPair,
    EndoMap,
    FreeWord,
    GrammarError,
    HVector,
    format_word,
    parse_word,
)

__version__ = "0.1.0"
