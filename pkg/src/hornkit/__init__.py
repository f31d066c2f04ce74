"""hornkit: exact analysis of bivariate nonconfluent Horn hypergeometric
systems — operators, holonomic rank, solution-space decomposition counts,
Puiseux polynomial solutions, polygon classification, and the maximal
reducibility decision."""

from .lattice import Vec2, ccw_sort, index_nu, opposite_open_quadrants, primitive
from .puiseux import PuiseuxPolynomial, parse_rational
from .system import (
    HornSystem,
    ResonanceReport,
    check_nonconfluent,
    detect_resonance,
    normalize_rows,
)
from .operators import (
    AffineFactor,
    HornOperatorPair,
    apply_horn,
    apply_intertwiner,
    build_operators,
    is_solution,
)
from .polygon import (
    Classification,
    Kind,
    OreSatoPolygon,
    build_polygon,
    classify,
    is_maximally_reducible,
    minkowski_decompose,
    vertex_count,
)
from .counting import (
    ComponentRef,
    ConeQ,
    component_ref,
    convergent_count_S,
    convergent_dim_by_cone,
    fully_supported_count,
    holonomic_rank,
    persistent_dim,
)
from .atomic import (
    AtomicSystem,
    FrameChange,
    atomic_rank,
    enumerate_atomic,
    normalize_frame,
    persistent_monomials,
    persistent_polynomials,
    polynomial_exponents,
)
from .series import (
    HarvestResult,
    ResonantCollisionError,
    TruncatedSeries,
    harvest_polynomials,
    harvest_unique_polynomials,
    series_from_submatrix,
    support_cone,
    verify_truncated,
)
from .solver import (
    ClosedFormSolution,
    MonodromyDiagonal,
    check_constructive,
    expand_closed_form,
    monodromy_exponents,
    parallelepipedal_closed_form,
    persistent_solutions,
    simplicial_closed_form,
    suggest_polynomial_parameters,
    validate_persistence,
)

__version__ = "0.1.0"
