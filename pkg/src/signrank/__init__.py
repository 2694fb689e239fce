"""Signed rectangle decompositions of Boolean matrices and tensors."""

__version__ = "0.1.0"

from .core import (
    BoolMatrix,
    IntMatrix,
    Rectangle,
    SignedDecomposition,
    SignedTerm,
    column_sum,
    evaluate_decomposition,
    exact_rank,
    is_independent,
    rect_to_matrix,
    verify_decomposition,
)
from .decompose import (
    IndependentSet,
    express_column,
    find_equal_sum_subsets,
    independent_set_bound_check,
    maximal_independent_columns,
    signed_rectangle_decomposition,
)
from .errors import (
    BoundsError,
    DimensionError,
    MaximalityError,
    ResourceLimitError,
    SignrankError,
    UsageError,
    ValidationError,
)
from .oracles import (
    OracleResult,
    exact_partition_number,
    exact_signed_rank,
    max_monochromatic_rectangle,
)
from .setsys import (
    SetFamilyPair,
    ab_to_boolean,
    best_monochromatic_subfamilies,
    check_cross_intersecting,
    element_rectangles,
    family_to_matrix,
    rectangles_to_family,
    signed_to_cross_intersecting,
)
from .tensor import (
    BoolTensor,
    PrimitiveTensor,
    SignedTensorDecomposition,
    evaluate_tensor_decomposition,
    flatten,
    flattening_rank,
    maximal_independent_slices,
    tensor_signed_decomposition,
    tensor_slice,
)
