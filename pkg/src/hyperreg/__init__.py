"""Labeled hypergraphs of square-free monomial ideals, combinatorial
regularity bounds, and an exact multigraded Betti-number oracle over GF(p)."""

__version__ = "0.1.0"

from .bounds import (
    BoundReport,
    best_bounds,
    fill_upper_bound,
    iso_upper_bound,
    matching_lower_bound,
    matching_regularity,
    min_fill_number,
    saturated_regularity,
    simple_edge_regularity,
    taylor_regularity_bound,
)
from .hypergraph import (
    LabeledHypergraph,
    NotSeparatedError,
    build_hypergraph,
    closed_vertices,
    dimension,
    has_isolated_open_vertices,
    has_isolated_simple_edges,
    ideal_of,
    is_saturated,
    is_separated,
    neighbors,
    open_vertices,
    render,
    separation_witness,
    simple_edges,
)
from .monomials import (
    Alphabet,
    IdealFormatError,
    Monomial,
    MonomialIdeal,
    UnitIdealError,
    add_generator,
    alexander_dual,
    colon_by_monomial,
    lcm,
    minimalize,
    parse_ideal,
)
from .oracle import (
    GF2,
    GF3,
    BettiTable,
    CapExceededError,
    FieldSpec,
    SimplicialComplex,
    betti_table,
    is_taylor_minimal,
    lcm_lattice,
    projective_dimension,
    reduced_homology_ranks,
    regularity,
    taylor_complex,
    taylor_strand_betti,
    upper_koszul,
)
