"""Alignments of totally and partially ordered sets."""

from .alignment import (
    Alignment,
    BlockPartition,
    Column,
    Quotient,
    RowPartition,
    block_decompose,
    concatenate_blocks,
    from_gapped,
    induce_column_order,
    quotient,
    recombine,
    render_gapped,
    restrict,
    split,
    split_extreme_column,
    unquotient,
    validate_general,
    validate_local_marking,
    validate_recover,
    validate_total,
)
from .dp import align_pair_cross, align_pair_recover, align_seq_to_poset, align_strings_nw
from .errors import *  # noqa: F401,F403
from .oracle import enumerate_pair_alignments, oracle_optimum
from .poset import (
    Antichain,
    BottomSet,
    Poset,
    antichain_poset,
    bottom_set_of,
    build_poset,
    chain_poset,
    enumerate_antichains,
    linear_extension,
    suprema,
)
from .progressive import GuideTree, progressive_align
from .relations import (
    PairRelation,
    RelationGraph,
    ViolationReport,
    alignment_from_relation,
    check_M,
    check_P,
    check_Pprime,
    compose,
    relation_from_alignment,
    transitive_multialign,
)
from .scoring import ScoringScheme, score_alignment

__version__ = "0.1.0"
