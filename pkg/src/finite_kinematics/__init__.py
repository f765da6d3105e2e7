"""Finite-dimensional quantum kinematics from Schwinger's unitary pair.

Cartesian (position/momentum) and angular (angle/angular momentum) variables
on N states, and diagnostics for how they approach their continuum forms as
N grows.
"""

from .angular import (
    AngularConfig,
    AngularPair,
    angle_shift,
    build_angular_pair,
    exp_theta_operator,
    theta_m_overlap,
    theta_wrap,
)
from .hilbert import (
    DenseOperator,
    DimensionError,
    LinearOperator,
    PhasedShift,
    UDiagonal,
    VDiagonal,
    apply,
    basis_state,
    dft_matrix,
    dft_overlap,
    expectation,
    identity,
)
from .kinematics import (
    CanonicalPair,
    KinematicsConfig,
    OffGridError,
    build_canonical_pair,
    commutator_expectation,
    compose_shifts,
    epsilon,
    rescale_delta,
    shift_in_p,
    shift_in_q,
)
from .limits import (
    ConvergenceTable,
    TestStateSpec,
    cartesian_kernel_error,
    commutator_sweep,
    kernel_error,
    make_state,
    spacing_report,
)
from .schwinger import (
    SchwingerPair,
    build_pair,
    pair_power,
    v_eigenvector,
    verify_weyl,
    weyl_phase,
)

__version__ = "0.1.0"
