"""k-automatic sequences from digit-pattern counting.

A toolkit for sequences n -> (pattern occurrences or nonzero-digit count of
the base-k digits of n) mod L, their restriction to arithmetic
subsequences and polynomial relabelings, the finite machines computing
them, constructive witnesses that no arithmetic subsequence is constant,
and exact evaluation of the numbers sum(a(n)/beta**(n+1)).
"""

from .basek import (
    ArithSub,
    DigitExpansion,
    DigitSum,
    Pattern,
    PatternCount,
    PolyMap,
    SequenceSpec,
    SpecFormatError,
    assemble,
    count_pattern,
    digit_count,
    eval_seq,
    expand,
    nonzero_digit_count,
    rudin_shapiro_spec,
    spec_from_json,
    spec_to_json,
    thue_morse_spec,
)
from .dfao import (
    Dfao,
    KernelClosure,
    KernelElement,
    StateCapExceeded,
    arith_subsequence,
    build_digitsum_dfao,
    build_pattern_dfao,
    compile_spec,
    kernel,
    minimize,
    poly_output_map,
    reverse_reading,
    run,
    to_dot,
    to_lsb,
)
from .periodicity import (
    GapWitness,
    InsufficientData,
    InvalidMatchExponent,
    PeriodScan,
    PolyCondition,
    RefutationWitness,
    ResidueWitness,
    ScanEntry,
    SearchCapExceeded,
    boundary_occurrence,
    check_poly_condition,
    construct_refutation,
    find_gap_multiple,
    render_scan_report,
    scan_everywhere_nonperiodic,
    scan_ultimate_period,
    solve_residue,
)
from .realnum import DigitStream

__all__ = [
    "ArithSub",
    "Dfao",
    "DigitExpansion",
    "DigitStream",
    "DigitSum",
    "GapWitness",
    "InsufficientData",
    "InvalidMatchExponent",
    "KernelClosure",
    "KernelElement",
    "Pattern",
    "PatternCount",
    "PeriodScan",
    "PolyCondition",
    "PolyMap",
    "RefutationWitness",
    "ResidueWitness",
    "ScanEntry",
    "SearchCapExceeded",
    "SequenceSpec",
    "SpecFormatError",
    "StateCapExceeded",
    "arith_subsequence",
    "assemble",
    "boundary_occurrence",
    "build_digitsum_dfao",
    "build_pattern_dfao",
    "check_poly_condition",
    "compile_spec",
    "construct_refutation",
    "count_pattern",
    "digit_count",
    "eval_seq",
    "expand",
    "find_gap_multiple",
    "kernel",
    "minimize",
    "nonzero_digit_count",
    "poly_output_map",
    "render_scan_report",
    "reverse_reading",
    "rudin_shapiro_spec",
    "run",
    "scan_everywhere_nonperiodic",
    "scan_ultimate_period",
    "solve_residue",
    "spec_from_json",
    "spec_to_json",
    "thue_morse_spec",
    "to_dot",
    "to_lsb",
]

__version__ = "0.1.0"
