"""Integers that are not sums of j positive k-th powers.

A bit-parallel sieve decides (j,k)-representability for every n below a
window; the complements are the exception sets, whose shifted copies
stabilize once two checkable conditions hold.  On top of that sit a
depth-first representation finder, a witness (n*) search, exact partition
counters, and the density heuristics that predict where witnesses live.
"""

from .bsets import (
    BSetStats,
    ConsistencyVerdict,
    StabilizationResult,
    ThreeSquares,
    bset_stats,
    check_chain_inclusion,
    check_conjectures,
    check_consistency,
    classify_four_squares,
    classify_three_squares,
    extract_bset,
    fermat_lower_bound,
    reduce_bset,
    stabilization_bound,
    stabilize,
    three_cubes_obstruction,
)
from .core import (
    BSet,
    Bound,
    CertificateError,
    InconclusiveError,
    KnownBounds,
    NotTabulatedError,
    PowerTable,
    PreconditionError,
    RangeOverflowError,
    RepSieve,
    ResourceCapError,
    SearchBudgetError,
    ToleranceError,
    WaringError,
    build_power_table,
    iroot,
    iroot_ratio,
    known_bounds,
)
from .heur import (
    CoincidenceEstimate,
    ExponentVerdict,
    HeuristicModel,
    Outlook,
    VolumeEstimate,
    adaptive_simpson,
    density,
    expected_coincidences,
    exponent_E,
    volume,
)
from .nstar import (
    DoubledCandidate,
    MinDEstimate,
    double_candidate,
    min_d_heuristic,
    run_exponent,
    search_candidates,
)
from .partitions import (
    count_partitions,
    count_partitions_into_parts,
    count_power_partitions,
    count_power_partitions_into_parts,
    power_partition_table,
)
from .repfind import (
    NStarCertificate,
    Representation,
    build_prune_sieve,
    find_representation,
    verify_nstar,
)
from .sieve import (
    IntervalCertificate,
    advance,
    extend_interval,
    nstar_application_bound,
    sieve_at_most,
    sieve_base,
    sieve_exact,
)

__version__ = "0.1.0"
