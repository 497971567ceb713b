"""Linear secret sharing from toric evaluation codes."""

from .errors import ToricError
from .gf import GF, FieldSpec, field_new, field_of_size
from .lattice import (
    Explicit,
    Hirzebruch,
    Hypercube,
    PointSet,
    Trapezoid,
    dual_support,
    family_points,
    minkowski_sum,
    reduce_mod,
)
from .code import (
    EvalCode,
    TorusSupport,
    dual_by_nullspace,
    dual_by_support,
    evaluation_matrix,
    max_zeros,
    min_distance_exact,
    torus_support,
    weight_distribution,
)
from .scheme import (
    MasseyScheme,
    build_scheme,
    deal,
    is_qualified,
    multiply_and_reconstruct,
    reconstruct,
    strong_mult_direct_check,
    thresholds,
    verify_privacy,
    verify_reconstruction,
)
from .surfaces import family_params, hirzebruch_params, trapezoid_params, validate_family
from .kernels import HAVE_EXTENSION, available_backends, use_backend

__version__ = "0.1.0"
