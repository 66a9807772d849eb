"""Symplectic quasifolds from simple convex polytopes.

The pipeline: an H-representation polytope over a real algebraic number
field is parsed and validated, a surjective projection from the standard
basis onto the facet normals is formed, and the reduced space carrying
the induced symplectic structure is described exactly (kernel, moment
maps, quasilattice, vertex structure groups, classification).  A Monte
Carlo verifier checks the smooth-side identities numerically.
"""

from .construction import (
    MANIFOLD,
    ORBIFOLD,
    QUASIFOLD,
    Classification,
    DelzantData,
    Quasilattice,
    VertexChart,
    build_construction,
    classify,
    construction_report,
    fixed_points,
    induced_moment,
    kernel_moment,
    torus_moment,
    vertex_structure_group,
)
from .corpus import builtin_document, builtin_names
from .errors import (
    DimensionMismatch,
    DimensionUnsupported,
    DivisionByZeroScalar,
    FieldError,
    FieldMismatch,
    IllConditioned,
    InternalInconsistency,
    InvalidPolytope,
    LowerDimensional,
    NoSignChange,
    NormalsDontSpan,
    NotAVertex,
    NotMonic,
    NotRationalInput,
    NotSimple,
    OffLevelSet,
    QuasifoldError,
    ReduciblePolynomial,
    RejectionStall,
    RootNotIsolated,
    ScalarSyntaxError,
    SchemaError,
    SignUndecidable,
    StepOutOfRange,
    UnboundedPolytope,
)
from .linalg import Matrix
from .polytope import (
    HPolytope,
    Vertex,
    check_delzant,
    check_rational,
    check_simple,
    parse_polytope,
)
from .scalars import DEFAULT_PRECISION, Field, Scalar, parse_scalar, rational_field
from .verify import (
    VerificationReport,
    check_hamiltonian_identity,
    check_invariance,
    check_regular_value,
    hull_hausdorff_distance,
    run_verification,
    sample_level_set,
    verify_moment_image,
)

__version__ = "0.1.0"

__all__ = [
    "MANIFOLD",
    "ORBIFOLD",
    "QUASIFOLD",
    "Classification",
    "DEFAULT_PRECISION",
    "DelzantData",
    "DimensionMismatch",
    "DimensionUnsupported",
    "DivisionByZeroScalar",
    "Field",
    "FieldError",
    "FieldMismatch",
    "HPolytope",
    "IllConditioned",
    "InternalInconsistency",
    "InvalidPolytope",
    "LowerDimensional",
    "Matrix",
    "NoSignChange",
    "NormalsDontSpan",
    "NotAVertex",
    "NotMonic",
    "NotRationalInput",
    "NotSimple",
    "OffLevelSet",
    "Quasilattice",
    "QuasifoldError",
    "ReduciblePolynomial",
    "RejectionStall",
    "RootNotIsolated",
    "Scalar",
    "ScalarSyntaxError",
    "SchemaError",
    "SignUndecidable",
    "StepOutOfRange",
    "UnboundedPolytope",
    "VerificationReport",
    "Vertex",
    "VertexChart",
    "build_construction",
    "builtin_document",
    "builtin_names",
    "check_delzant",
    "check_hamiltonian_identity",
    "check_invariance",
    "check_rational",
    "check_regular_value",
    "check_simple",
    "classify",
    "construction_report",
    "fixed_points",
    "hull_hausdorff_distance",
    "induced_moment",
    "kernel_moment",
    "parse_polytope",
    "parse_scalar",
    "rational_field",
    "run_verification",
    "sample_level_set",
    "torus_moment",
    "vertex_structure_group",
    "verify_moment_image",
]
