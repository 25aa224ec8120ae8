"""Geometry of cyclic left-invariant Riemannian metrics on Lie groups."""

from .algebra import (
    DEFAULT_TOL,
    InvariantError,
    LieAlgebra,
    MetricLieAlgebra,
    NotCyclicError,
    Subspace,
    ToleranceConfig,
    ValidationError,
    bracket,
    center,
    change_basis,
    check_anti_derivation,
    check_cyclic,
    check_jacobi,
    derived_ideal,
    killing_form,
    left_null,
    mean_curvature_vector,
    right_null,
    structural_flags,
)
from .connection import (
    CurvatureTensor,
    LeviCivitaProduct,
    RicciData,
    check_constant_curvature,
    check_vectorial,
    curvature,
    curvature_report,
    levi_civita,
    nabla_curvature,
    nabla_ricci,
    ricci,
    ricci_cyclic_formula,
    scalar_curvature,
    sectional,
)
from .decompose import CatalogEntry, Decomposition, catalog, decompose, instantiate
from .gqp import (
    ClassificationFlags,
    GqpClosedForms,
    IsometryWitness,
    OmegaMatrix,
    build,
    classify,
    closed_forms,
    isometric,
    metric_at,
    normalize_square,
)
from .sl2 import (
    SL2_ALGEBRA,
    ProductSpec,
    Sl2CyclicMetric,
    build_product,
    build_sl2,
    sl2_canonical_parameters,
    sl2_closed_ricci,
)

__version__ = "0.1.0"
