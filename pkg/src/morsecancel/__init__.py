"""Discrete Morse theory on simplicial complexes.

Build Morse boundary matrices from weighted gradient trajectories, cancel
critical pairs, and update the matrices in closed form instead of
re-enumerating trajectories.
"""

from .cancel import (
    CancellablePair,
    RowOpTrace,
    auto_cancel,
    cancel_many,
    cancel_pair,
    fast_update,
    find_cancellable_pairs,
    find_nonidentity_permutation,
    make_pair,
    simultaneous_cancellable,
    update_boundary_k,
    update_boundary_kminus1,
    update_boundary_kplus1,
    update_coboundary_k,
    update_coboundary_kminus1,
    update_coboundary_kplus1,
)
from .complex import (
    SimplicialComplex,
    build_complex,
    chain_boundary_matrix,
    cochain_coboundary_matrix,
    incidence,
    make_simplex,
    matching_complex,
)
from .errors import (
    ChainLawError,
    InvalidPairError,
    InvalidVectorFieldError,
    MalformedFacetError,
    MorseError,
    NotCancellableError,
    NotGradientError,
    SequencingError,
    TrajectoryOverflowError,
    UnknownSimplexError,
)
from .gvf import (
    DiscreteVectorField,
    Trajectory,
    TrajectoryAggregate,
    TrajectoryEngine,
    cotrajectory_aggregate,
    critical_simplices,
    enumerate_trajectories,
    is_gradient,
    trajectory_aggregate,
    validate_dvf,
)
from .homology import (
    HomologyGroup,
    SmithForm,
    homology_of_pair,
    morse_homology,
    simplicial_homology,
    smith_normal_form,
)
from .matrix import IntegerMatrix
from .morse import (
    MorseComplexData,
    morse_boundary_matrix,
    morse_coboundary_matrix,
    morse_complex,
    verify_chain_law,
)

__version__ = "0.1.0"
