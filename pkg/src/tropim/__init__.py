"""Tropical linear spaces, their images under tropical matrices, and the
matroids underneath, computed exactly over max-plus rationals and the
Boolean semifield."""

from .exterior import (
    ExteriorVector,
    GroundSet,
    GroundSetError,
    TropMatrix,
    dot,
    hodge_star,
    tropdet,
    wedge,
)
from .extension import (
    graph_by_definition,
    graph_by_extensions,
    graph_extension,
    image_by_minors,
    image_rank,
    linear_extension,
    set_image_points,
    stable_intersection,
    stable_sum,
    stiefel,
    tropical_image,
)
from .lift import (
    FieldVectorSpace,
    LaurentPoly,
    RealizabilityVerdict,
    tropicalize_space,
    valuation,
    verify_realizable,
)
from .matroid import (
    BipartiteGraph,
    Matroid,
    MatroidError,
    brylawski_bound_check,
    cyclic_flats,
    induced_matroid,
    induced_matroid_bruteforce,
    is_transversal,
    matroid_union,
    principal_extension,
    transversal_matroid,
)
from .plucker import (
    PluckerVector,
    PluckerViolation,
    cocircuits,
    contains_point,
    dual,
    in_hyperplane,
    is_plucker,
    is_subspace,
    minor_intersect,
    minor_project,
    underlying_matroid,
    validate,
)
from .semifield import BOOLEAN, MAXPLUS, NEG_INF, DomainError

__version__ = "0.1.0"

__all__ = [
    "ExteriorVector", "GroundSet", "GroundSetError", "TropMatrix", "dot", "hodge_star",
    "tropdet", "wedge", "graph_by_definition", "graph_by_extensions", "graph_extension",
    "image_by_minors", "image_rank", "linear_extension", "set_image_points",
    "stable_intersection", "stable_sum", "stiefel", "tropical_image",
    "FieldVectorSpace", "LaurentPoly", "RealizabilityVerdict", "tropicalize_space",
    "valuation", "verify_realizable", "BipartiteGraph", "Matroid", "MatroidError",
    "brylawski_bound_check", "cyclic_flats", "induced_matroid",
    "induced_matroid_bruteforce", "is_transversal", "matroid_union",
    "principal_extension", "transversal_matroid", "PluckerVector", "PluckerViolation",
    "cocircuits", "contains_point", "dual", "in_hyperplane", "is_plucker",
    "is_subspace", "minor_intersect", "minor_project", "underlying_matroid", "validate",
    "BOOLEAN", "MAXPLUS", "NEG_INF", "DomainError",
]
