"""Novikov Betti numbers, completed group-ring arithmetic, and orbit counting.

The package computes Betti numbers of free chain complexes over group
rings of Z^m completed along a real weight, provides exact arithmetic in
the truncated completion, grades nondegenerate symplectic paths by their
Conley-Zehnder index, and verifies on torus systems that the number of
contractible one-periodic solutions of a locally Hamiltonian equation is
at least the Betti sum attached to its Calabi invariant.
"""

from .betti import (
    BettiReport,
    InvalidComplexError,
    NonUnitPivot,
    laurent_to_series,
    novikov_betti,
    rank_by_evaluation,
    rank_over_fraction_field,
    rank_over_truncated_novikov,
    series_matrix_from_laurent,
)
from .complexes import (
    ComplexError,
    GroupRingComplex,
    ValidationReport,
    complex_from_json_dict,
    complex_to_json_dict,
    preset_complex,
    specialize_to_theta,
    surface_complex,
    torus_complex,
    validate_complex,
)
from .cz import (
    CrossingIsolationError,
    DegenerateEndpoint,
    PathError,
    SymplecticPath,
    block_sum_path,
    conley_zehnder,
    crossing_index,
    hyperbolic_path,
    loop_shifted,
    reduce_index,
    rotation_path,
    winding_index_2d,
)
from .lattice import (
    DEFAULT_SEPARATION,
    IrresolvableComparison,
    LatticeError,
    Ordering,
    Splitting,
    WeightedLattice,
    compare_weights,
    kernel_and_split,
    project_to_quotient,
)
from .novikov import (
    GroupedSeries,
    InsufficientCutoff,
    LatticeMismatch,
    NonUnitLeadingBlock,
    SeriesError,
    Term,
    TruncatedSeries,
    series_add,
    series_from_json_dict,
    series_invert_unit,
    series_mul,
    series_neg,
    series_regroup,
    series_retruncate,
    series_scale,
    series_sub,
    series_to_json_dict,
    series_truncate,
    series_ungroup,
)
from .rings import ExactDivisionError, LaurentPoly, ModInt, NonUnitError
from .torus import (
    CosTerm,
    DynamicsError,
    PeriodicOrbit,
    TorusSystem,
    VerificationReport,
    builtin_systems,
    calabi_invariant,
    densify_until_stable,
    find_periodic_orbits,
    flow_and_monodromy,
    orbit_action,
    system_from_json_dict,
    system_to_json_dict,
    theta_weight_lattice,
    verify_main_theorem,
)

__version__ = "0.1.0"
