"""Exact arithmetic and verification for skew PBW extensions.

Rings are given by commutation data over QQ or a rational function field.
Elements are kept in normal form on the standard monomial basis, and every
verifying operation returns a ``Report`` of named checks.
"""

from .catalog import (
    catalog,
    catalog_algebra,
    catalog_names,
    catalog_resolution,
    ex34_matrices,
    ex34_misprinted_matrix,
)
from .const import VERSION, Side
from .dsl import Document, format_document, parse, parse_polynomial
from .exceptions import (
    BoundTooSmallError,
    DimensionError,
    DSLParseError,
    MapNotInvertibleError,
    NotIdempotentError,
    PresentationError,
    SingularSubstitutionError,
    SkewPBWError,
    VerificationError,
    ZeroDivisorError,
)
from .gbasis import IdealBasis, Member, NotMember, NotMemberUpTo, complete, member, reduce
from .homology import (
    bounded_exactness_probe,
    center_up_to_degree,
    ext_top_type,
    resolution_check,
    sas_check,
)
from .matring import Complex, Mat, dualize, is_complex, is_idempotent, mat_mul
from .orefree import hermite_rows, left_divide, qs_diagonalize, right_divide, verify_certificate
from .polyarith import (
    Algebra,
    Poly,
    filtration_dim,
    gk_estimate,
    hilbert_series_truncated,
    mul,
)
from .presentation import (
    Presentation,
    augmentation_analysis,
    build_presentation,
    classify,
    validate,
)
from .report import Report, Status
from .scalars import ScalarField, ScalarMap

__version__ = VERSION
