"""Exact period computations for the quintic threefold and its mirror.

The package reproduces, in exact arithmetic, the Frobenius periods of the
quintic Picard-Fuchs operator, the mirror map, the Yukawa coupling and
instanton numbers, the Gamma-class integral frame with its monodromy and
frame changes, and the domainwall tension with its open invariants and
normal-function data.
"""
from .constants import ConstScalar, TWO_PI_I, ZETA2, ZETA3
from .errors import (
    AdmissibilityError,
    AmbiguityError,
    ConsistencyError,
    DerivationError,
    DomainOverflowError,
    FlatnessError,
    NormalizationError,
    QuinticMirrorError,
    TruncationError,
    UnsupportedOperationError,
)
from .series import (
    HalfLogSeries,
    UPoly,
    series_exp,
    series_invert,
    series_log,
    series_reversion,
)
from .picard_fuchs import (
    FrobeniusBasis,
    ThetaOperator,
    apply,
    frobenius_solutions,
    quintic_operator,
    solve_inhomogeneous,
)
from .mirror_map import MirrorMap, build_mirror_map, delta, delta_z, to_q_coordinates
from .yukawa import (
    InstantonTable,
    extract_instantons,
    gm_potential,
    gw_potential,
    yukawa_q,
    yukawa_z,
)
from .cohomology import (
    CohomClass,
    asymptotic_flat_basis,
    chern_character,
    gamma_class,
    pairing_matrix,
)
from .frames import (
    FrameVector,
    derive_cjk,
    e_frame,
    integral_periods,
    monodromy_log,
    tilde_s_frame,
)
from .filtration import Filtration, relative_weight_filtration
from .open_string import (
    ExtensionData,
    Tension,
    log_point_restriction,
    monodromy_full_turn,
    normal_function,
    open_invariants,
    tension_A,
    tension_B,
    verify_tension_monodromy,
)

__version__ = "0.1.0"
