"""Exact counting and extremal search for systems of distinct representatives."""

from .closed_forms import chang_U, elementary_symmetric, pair_product_sum, valued_U
from .counting import SdrList, count_sdr, enumerate_sdrs, has_sdr, iter_sdrs
from .family import (
    FamilyError,
    GroundMap,
    NotValuedError,
    SetFamily,
    TightSet,
    canonical_form,
    construct_bar,
    construct_star,
    degree,
    equivalence_classes,
    exchange,
    family_from_canonical,
    is_bar_family,
    is_t_family,
    is_valued_family,
    member_indices,
    parse_family,
    parse_family_document,
    permute_members,
    relabel,
    serialize_family,
    tight_sets,
    union_size,
)
from .pairs import PairCensus, PairReport, census, classify_pair, descent_step
from .search import (
    DescentReport,
    SearchReport,
    SearchSpec,
    descend,
    descent_probe,
    enumerate_families,
    verify_theorem4,
)

__version__ = "0.1.0"
