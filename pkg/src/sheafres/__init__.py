"""Exact injective resolutions of sheaves on finite posets.

Core objects: posets and simplicial complexes, sheaves with exact matrix
restriction maps, injective sheaves as labeled generator tuples, minimal and
order-complex injective resolutions, and derived pushforwards, all over the
rationals or a prime field.
"""

from .fields import QQ, GF, Rationals, PrimeField, FieldError
from .linalg import (SparseMatrix, RowSpan, DimensionMismatch,
                     rref_with_transform, rank, kernel_basis,
                     left_null_basis, express_in_row_span, inverse)
from .posets import (Poset, PosetMap, SimplicialComplex, OrderComplex,
                     simplicial_poset_map, simplex_name, InvalidPoset,
                     InvalidComplex, UnknownElement)
from .sheaves import (Sheaf, NatTrans, InvalidSheaf, constant_sheaf,
                      zero_sheaf, restrict, extend_by_zero)
from .injectives import (InjectiveSheaf, LabeledMatrix, Multiplicities,
                         SupportViolation)
from .resolutions import (Resolution, ResolutionError, minimal_hull,
                          resolution_step, minimal_resolution,
                          order_complex_resolution, verify_exactness,
                          verify_minimality)
from .derived import (pushforward, compact_pushforward,
                      oracle_star_cohomology_c, oracle_open_cohomology_c,
                      oracle_order_complex_cohomology,
                      verify_multiplicity_theorem)

__version__ = "1.0.0"

__all__ = [
    "QQ", "GF", "Rationals", "PrimeField", "FieldError",
    "SparseMatrix", "RowSpan", "DimensionMismatch", "rref_with_transform",
    "rank", "kernel_basis", "left_null_basis", "express_in_row_span",
    "inverse",
    "Poset", "PosetMap", "SimplicialComplex", "OrderComplex",
    "simplicial_poset_map", "simplex_name", "InvalidPoset", "InvalidComplex",
    "UnknownElement",
    "Sheaf", "NatTrans", "InvalidSheaf", "constant_sheaf", "zero_sheaf",
    "restrict", "extend_by_zero",
    "InjectiveSheaf", "LabeledMatrix", "Multiplicities", "SupportViolation",
    "Resolution", "ResolutionError", "minimal_hull", "resolution_step",
    "minimal_resolution", "order_complex_resolution", "verify_exactness",
    "verify_minimality",
    "pushforward", "compact_pushforward", "oracle_star_cohomology_c",
    "oracle_open_cohomology_c", "oracle_order_complex_cohomology",
    "verify_multiplicity_theorem",
]
