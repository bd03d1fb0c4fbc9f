"""ybtk: decide whether an R-matrix admits an enhancement, build the
enhancement data when it exists, verify the defining axioms, and compute
the resulting link invariants from braid and tangle words.

The toolkit works over two interchangeable scalar backends: exact
multivariate rational functions over the rationals (optionally with the
imaginary unit adjoined) and complex double precision.
"""

from .catalog import Fixture, families, fixture
from .errors import (
    BadBindingError,
    MatrixFileError,
    NoMonomialRootError,
    NotBiinvertibleError,
    NotEnhanceableError,
    NotInvertibleError,
    ScalarSyntaxError,
    SingularMatrixError,
    StrandLimitError,
    TangleTypeError,
    ToolkitError,
    UnknownFamilyError,
    UnknownSymbolError,
)
from .invariants import (
    BraidWord,
    FundamentalBraidings,
    InvariantInput,
    TangleWord,
    braid_rep,
    braidings,
    closure_word,
    tangle_eval,
    turaev,
    writhe,
)
from .rmatrix import (
    AxiomResult,
    EnhancedPair,
    EnhancedQuadruple,
    Enhancement,
    EnhancementOutcome,
    EnhancementReport,
    braid_forms,
    check_qyb,
    compute_uv,
    contraction_identity,
    enhance,
    enhancement_test,
    full_check,
    second_inverse,
    slot_identities,
    trace_identities,
    twist_shadow,
    verify_pair,
    verify_quadruple,
)
from .scalars import (
    Field,
    FieldTag,
    RatFun,
    exact_tag,
    float_tag,
    format_scalar,
    monomial_sqrt,
    parse_scalar,
    scalar_invert,
    substitute,
)
from .tensors import Mat, Tensor4, embed, permutation, yb_sides

__all__ = [
    # scalars
    "Field", "FieldTag", "RatFun", "exact_tag", "float_tag", "parse_scalar",
    "format_scalar", "scalar_invert", "monomial_sqrt", "substitute",
    # tensors
    "Mat", "Tensor4", "permutation", "embed", "yb_sides",
    # decision procedures
    "AxiomResult", "EnhancementReport", "EnhancementOutcome", "Enhancement",
    "EnhancedPair", "EnhancedQuadruple", "check_qyb", "full_check",
    "braid_forms", "second_inverse", "compute_uv", "enhancement_test",
    "enhance", "verify_pair", "verify_quadruple", "slot_identities",
    "trace_identities", "contraction_identity", "twist_shadow",
    # invariants
    "BraidWord", "writhe", "braid_rep", "InvariantInput", "turaev",
    "FundamentalBraidings", "braidings", "TangleWord", "tangle_eval",
    "closure_word",
    # catalog
    "families", "fixture", "Fixture",
    # errors
    "ToolkitError", "ScalarSyntaxError", "UnknownSymbolError",
    "SingularMatrixError", "NotInvertibleError", "NotBiinvertibleError",
    "NotEnhanceableError", "NoMonomialRootError", "TangleTypeError",
    "UnknownFamilyError", "BadBindingError", "StrandLimitError",
    "MatrixFileError",
]

__version__ = "0.1.0"
