"""Ultrafilters on finite sets as inverse limits of partition diagrams."""

from .errors import (
    ConeError,
    DegeneratePartitionError,
    DiagramError,
    InputError,
    OrderError,
    ResourceError,
    ThreadError,
    UflimError,
)
from .partitions import (
    GroundSet,
    Partition,
    RefinementMap,
    common_refinement,
    enumerate_partitions,
    format_partition,
    leq,
    psi,
    subset_witness,
    two_block,
)
from .limits import (
    Cone,
    Diagram,
    Thread,
    enumerate_threads,
    full_diagram,
    is_thread,
    mediating_map,
    partition_diagram,
    validate_diagram,
)
from .fcalgebra import FcPartition, FcSet, bigg_fc
from .ultrafilters import (
    PrincipalUltrafilter,
    UltrafilterFamily,
    bigg,
    bigg_diagram,
    check_axioms,
    enumerate_ultrafilters_bruteforce,
    fc_bigg_diagram,
    fc_free_thread,
    phi,
    phi_inverse,
    trace,
)
from .dynamics import (
    EventuallyPeriodicSequence,
    OmegaBlockSet,
    OrbitSystem,
    corollary_limit,
    delta_f,
    delta_x,
    orbit_decompose,
)
from .config import RunConfig

__version__ = "0.1.0"
