"""Partition logic on finite sets and the pieces built on it.

Partitions and their lattice, classical and quantum logical entropy,
density matrices with projective measurement, quantum mechanics over the
powerset of a set, and occupancy statistics.
"""

from types import ModuleType as _ModuleType

from .entropy import (
    BoxDiagram,
    DistanceFunction,
    ProbDist,
    box_diagram,
    compound_entropy,
    dist_from_json,
    logical_entropy_dist,
    logical_entropy_partition,
    product_measure,
    quadratic_entropy,
)
from .errors import (
    AtomNotInUniverse,
    CoverError,
    EmptyBlockError,
    EmptySupport,
    ExclusionViolated,
    InputError,
    InvalidDensityMatrix,
    InvalidDistribution,
    MissingDistance,
    MissingTheta,
    NonPositiveProbability,
    NotPureState,
    OverlapError,
    PartLogicError,
    RankDeficientBasis,
    SizeCapExceeded,
    StateError,
    ThetaSumMismatch,
    UniverseMismatch,
    ZeroProbability,
)
from .kernels import BACKEND
from .occupancy import (
    OccupancyProfile,
    RegimeSpec,
    be_count,
    be_probability,
    falling_factorial,
    fd_count,
    fd_probability,
    mb_probability,
    occupancy_profiles,
    rising_factorial,
    twelvefold_bruteforce,
    twelvefold_count,
)
from .partition import (
    LatticeGraph,
    PairRelation,
    Partition,
    Universe,
    bell_number,
    dit_set,
    enumerate_partitions,
    implies,
    indit_set,
    join,
    lattice_graph,
    make_partition,
    meet,
    partition_from_json,
    refines,
)
from .qmsets import (
    BasisTable,
    KetTable,
    SlitScenario,
    SubsetVector,
    add_vectors,
    apply_evolution,
    express_in_basis,
    ket_table,
    run_double_slit,
    trace_lattice_path,
    trace_to_dot,
)
from .quantum import (
    AmplitudeVector,
    DensityMatrix,
    EigenvalueFunction,
    RelationMatrix,
    density_mixture,
    density_superposition,
    extract_amplitudes,
    lueders_measure,
    measurement_entropy_increase,
    quantum_logical_entropy,
    rel_delta,
    rel_full,
    rho_sharp,
)

__version__ = "0.1.0"

__all__ = sorted(
    name for name, obj in dict(globals()).items() if not name.startswith("_") and not isinstance(obj, _ModuleType)
)
