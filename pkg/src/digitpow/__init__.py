"""digitpow: exact verification of digit-sum growth for powers of two."""

from .bignum import (
    LIMB_BASE,
    LIMB_DIGITS,
    DecimalNat,
    compare,
    digit_count,
    digit_scan,
    digit_sum,
    divisible_by_pow2,
    double_in_place,
    from_decimal_string,
    from_small,
    mul_small,
    split_mod_pow10,
    to_decimal_string,
    to_int,
    zero,
)
from .checks import (
    Decomposition,
    DigitTerm,
    SplitWitness,
    decompose,
    four_power_bound_check,
    gap_inequality_check,
    scan_splits,
    verify_split,
)
from .intlog import (
    BoundTable,
    FloorLog2Pow10Table,
    bound_table,
    digit_count_formula_check,
    digit_sum_exceeds_log4,
    exact_floor_log2_pow10,
)
from .oeis import BFileFormatError, CrossCheckReport, OeisSeries, cross_check, parse_bfile
from .power import (
    CheckpointError,
    PowerState,
    load_checkpoint,
    save_checkpoint,
    validate_multiplier,
)
from .ratios import RatioSample, conjecture_constant, render_fraction, running_mean
from .sweep import SweepConfig, SweepSummary, VerificationRecord, run_bench, run_sweep

__version__ = "0.1.0"
