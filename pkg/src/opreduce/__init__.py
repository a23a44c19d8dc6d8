"""Exact partial reduction of A(x) = Bx + φ through the rational canonical form."""

from .canonical import (
    CompanionBlock,
    PolyMatrix,
    RcfResult,
    companion,
    rational_canonical_form,
    smith_normal_form,
)
from .charpoly import charpoly_faddeev, charpoly_symbolic, charpoly_via_minors
from .errors import InputError, InternalConsistencyError, RangeError, SingularMatrix
from .exactmath import UniPoly, parse_scalar, format_scalar, poly_divmod, poly_gcd
from .matrixcore import (
    DenseMatrix,
    determinant,
    inverse,
    principal_minor_sum,
    principal_minor_sum_through_column,
    substitute_column,
)
from .operators import (
    SequenceElement,
    SeriesElement,
    VerificationReport,
    apply_operator_poly,
    evaluate_rhs,
    iterate_system,
    reconstruct_and_verify,
    taylor_system,
    verify_forward,
)
from .reduction import (
    ReducedSystem,
    RhsTable,
    delta_k1_closed_form,
    partially_reduce,
    rhs_table,
)

__version__ = "0.1.0"
