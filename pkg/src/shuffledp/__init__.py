"""Exact Renyi-DP accounting for shuffled Gaussian mechanisms.

The core computes the order-lambda Renyi divergence of a shuffled set
of per-sender Gaussians exactly (one term per integer partition of the
order), layers subsampling and random check-in participation on top,
composes rounds through a persistent ledger, and converts to
(epsilon, delta).  A local-DP shuffle baseline is included for
comparison tables."""

from .accountant import (
    ApproxDp,
    Ledger,
    LedgerEntry,
    compose,
    conversion_penalty,
    equivalent_central_noise,
    ledger_append,
    load_ledger,
    save_ledger,
    to_approx_dp,
)
from .amplification import (
    DEFAULT_DELTA_GRID,
    DIRECT_EVALUATION_CAP,
    CheckinFastResult,
    CheckinSpec,
    MonotonicityReport,
    SubsampleSpec,
    checkin_rdp_direct,
    checkin_rdp_fast,
    monotonicity_scan,
    subsampled_shuffle_rdp,
)
from .baselines import (
    DEFAULT_SENSITIVITY,
    LdpSpec,
    calibrate_sigma,
    clones_shuffle_bound,
    clones_table_row,
    gaussian_ldp_epsilon,
    strong_compose,
)
from .errors import BoundNotApplicableError, ResourceLimitError, ShuffleDpError
from .partitions import (
    DEFAULT_ORDER_CAP,
    MultiplicityTable,
    Partition,
    generate_partitions,
    log_multinomial_coefficient,
    log_permutation_count,
    unique_counts,
)
from .rdp_core import (
    BRUTE_FORCE_LIMIT,
    MechanismSpec,
    RdpCurve,
    brute_force_rdp,
    rdp_curve,
    shuffle_gaussian_log_moment,
    shuffle_gaussian_rdp,
    shuffle_gaussian_upper_bound,
)

__version__ = "0.1.0"

__all__ = [
    "ApproxDp",
    "BRUTE_FORCE_LIMIT",
    "BoundNotApplicableError",
    "CheckinFastResult",
    "CheckinSpec",
    "DEFAULT_DELTA_GRID",
    "DEFAULT_ORDER_CAP",
    "DEFAULT_SENSITIVITY",
    "DIRECT_EVALUATION_CAP",
    "Ledger",
    "LedgerEntry",
    "LdpSpec",
    "MechanismSpec",
    "MonotonicityReport",
    "MultiplicityTable",
    "Partition",
    "RdpCurve",
    "ResourceLimitError",
    "ShuffleDpError",
    "SubsampleSpec",
    "brute_force_rdp",
    "calibrate_sigma",
    "checkin_rdp_direct",
    "checkin_rdp_fast",
    "clones_shuffle_bound",
    "clones_table_row",
    "compose",
    "conversion_penalty",
    "equivalent_central_noise",
    "gaussian_ldp_epsilon",
    "generate_partitions",
    "ledger_append",
    "load_ledger",
    "log_multinomial_coefficient",
    "log_permutation_count",
    "monotonicity_scan",
    "rdp_curve",
    "save_ledger",
    "shuffle_gaussian_log_moment",
    "shuffle_gaussian_rdp",
    "shuffle_gaussian_upper_bound",
    "strong_compose",
    "subsampled_shuffle_rdp",
    "to_approx_dp",
    "unique_counts",
]
