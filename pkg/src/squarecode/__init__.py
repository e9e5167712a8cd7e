"""Square-code distinguisher for alternant and Goppa codes."""

from .codes import LinearCode, dual, square, star_product, subfield_subcode, trace_code
from .distinguisher import (
    BoundInputs,
    bound_alternant,
    bound_for,
    bound_goppa,
    largest_distinguishable_r,
    mceliece_table,
    measure_square_dual_dim,
    lp_identity_check,
)
from .errors import SquareCodeError
from .families import FamilyParams, alternant, goppa, grs, sample_instance
from .field import FieldCtx, SubfieldCtx, field_new, subfield_for
from .reports import DistinguisherReport

__version__ = "0.1.0"

__all__ = [
    "BoundInputs",
    "DistinguisherReport",
    "FamilyParams",
    "FieldCtx",
    "LinearCode",
    "SquareCodeError",
    "SubfieldCtx",
    "alternant",
    "bound_alternant",
    "bound_for",
    "bound_goppa",
    "dual",
    "field_new",
    "goppa",
    "grs",
    "largest_distinguishable_r",
    "mceliece_table",
    "measure_square_dual_dim",
    "lp_identity_check",
    "sample_instance",
    "square",
    "star_product",
    "subfield_for",
    "subfield_subcode",
    "trace_code",
]
