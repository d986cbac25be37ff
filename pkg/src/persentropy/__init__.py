"""Persistent entropy of sampled signals.

Pipeline: signal -> lower-star filtration -> 0-dimensional persistence
barcode -> persistent entropy, plus stability certification (bottleneck
distance, explicit entropy bound) and an entropy-threshold classifier
with ROC/AUC and stratified cross-validation.
"""

from .classify import (
    CvReport,
    FoldResult,
    LabeledScore,
    RocCurve,
    best_threshold,
    cross_validate,
    load_scores,
    mann_whitney_auc,
    roc_curve,
    save_scores,
)
from .entropy import EntropyResult, persistent_entropy, signal_entropy
from .errors import (
    BoundInapplicableError,
    DegenerateLabelsError,
    EmptyBarcodeError,
    IncompatibleSignalsError,
    InvalidSignalError,
    OracleMismatchError,
    OracleTooLargeError,
    ParseError,
    PersentropyError,
    StratificationError,
)
from .filtration import (
    FilteredComplex,
    SimplexSchedule,
    lower_star_filtration,
    schedule,
)
from .persistence import (
    Barcode,
    Interval,
    barcodes_equal,
    compute_barcode,
    oracle_barcode,
)
from .signals import (
    Signal,
    load_signal,
    perturb,
    save_signal,
    shift,
    sup_distance,
)
from .stability import (
    Diagram,
    StabilityReport,
    bottleneck_distance,
    bottleneck_matching,
    delta_for_epsilon,
    entropy_stability_bound,
    entropy_term,
    entropy_term_modulus,
    verify_stability,
)
from .synth import (
    CorpusSpec,
    corpus_digest,
    generate_corpus,
    performance_signal,
    write_corpus,
)

__version__ = "0.1.0"

__all__ = [
    "Barcode",
    "BoundInapplicableError",
    "CorpusSpec",
    "CvReport",
    "DegenerateLabelsError",
    "Diagram",
    "EmptyBarcodeError",
    "EntropyResult",
    "FilteredComplex",
    "FoldResult",
    "IncompatibleSignalsError",
    "Interval",
    "InvalidSignalError",
    "LabeledScore",
    "OracleMismatchError",
    "OracleTooLargeError",
    "ParseError",
    "PersentropyError",
    "RocCurve",
    "Signal",
    "SimplexSchedule",
    "StabilityReport",
    "StratificationError",
    "barcodes_equal",
    "best_threshold",
    "bottleneck_distance",
    "bottleneck_matching",
    "compute_barcode",
    "corpus_digest",
    "cross_validate",
    "delta_for_epsilon",
    "entropy_stability_bound",
    "entropy_term",
    "entropy_term_modulus",
    "generate_corpus",
    "load_scores",
    "load_signal",
    "lower_star_filtration",
    "mann_whitney_auc",
    "oracle_barcode",
    "performance_signal",
    "persistent_entropy",
    "perturb",
    "roc_curve",
    "save_scores",
    "save_signal",
    "schedule",
    "shift",
    "signal_entropy",
    "sup_distance",
    "verify_stability",
    "write_corpus",
]
