"""Persistent entropy of a barcode.

The unbounded bar [x, inf) is truncated to [x, m) with m = max filter + 1,
lengths are normalized to probabilities p_i = l_i / L, and
H = -sum p_i ln p_i. H is reported both raw (nats) and normalized by ln n,
since the two scales serve different uses: the raw value is the theorem's
quantity, the normalized one is comparable across bar counts and is what
the classifier consumes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import EmptyBarcodeError
from .filtration import lower_star_filtration
from .jsonio import dumps
from .persistence import Barcode, compute_barcode
from .signals import Signal


@dataclass(frozen=True)
class EntropyResult:
    """Entropy plus the bookkeeping that produced it.

    lengths and probabilities are sorted ascending; that is also the
    accumulation order, so results are reproducible bit-for-bit.
    """

    raw_entropy: float
    normalized_entropy: float
    bar_count: int
    total_length: float
    lengths: tuple[float, ...]
    probabilities: tuple[float, ...]
    substituted_m: float

    def to_dict(self) -> dict:
        return {
            "H": self.raw_entropy,
            "H_norm": self.normalized_entropy,
            "bars": self.bar_count,
            "L": self.total_length,
            "m": self.substituted_m,
        }

    def to_json(self, indent: int = 0) -> str:
        return dumps(self.to_dict(), indent=indent)


def bar_lengths(B: Barcode) -> tuple[np.ndarray, float]:
    """Lengths after substituting m = max_filter + 1 for the unbounded bar."""
    if len(B) == 0:
        raise EmptyBarcodeError("cannot compute entropy of an empty barcode")
    m = B.max_filter + 1.0
    lengths = np.array(
        [(m if iv.death is None else iv.death) - iv.birth for iv in B.intervals]
    )
    if np.any(lengths <= 0):
        raise ValueError("internal invariant violation: bar of non-positive length")
    return lengths, m


def persistent_entropy(B: Barcode) -> EntropyResult:
    """Shannon entropy of the normalized bar lengths, in nats."""
    lengths, m = bar_lengths(B)
    lengths = np.sort(lengths)
    total = float(np.sum(lengths))
    p = lengths / total
    # p > 0 throughout, but keep the 0 log 0 = 0 convention explicit
    nonzero = p > 0
    raw = float(-np.sum(p[nonzero] * np.log(p[nonzero])))
    n = len(lengths)
    normalized = 0.0 if n == 1 else raw / math.log(n)
    return EntropyResult(
        raw_entropy=raw,
        normalized_entropy=normalized,
        bar_count=n,
        total_length=total,
        lengths=tuple(float(x) for x in lengths),
        probabilities=tuple(float(x) for x in p),
        substituted_m=m,
    )


def signal_entropy(f: Signal) -> EntropyResult:
    """Full pipeline: lower-star filtration -> barcode -> entropy."""
    return persistent_entropy(compute_barcode(lower_star_filtration(f)))
