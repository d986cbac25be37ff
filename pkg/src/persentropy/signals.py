"""Sampled 1-D signals: validation, I/O, sup-norm, shift and perturbation.

A signal is a finite sequence of (time, value) samples with strictly
increasing times and finite values; it is the discrete sampling of the
piecewise linear function the rest of the pipeline filters.
"""

from __future__ import annotations

import csv
import io
import json
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import IncompatibleSignalsError, InvalidSignalError, ParseError
from .jsonio import format_float

# Hardware clocks jitter; times within this relative tolerance are the
# same grid point.
GRID_RTOL = 1e-9


def _as_readonly(a) -> np.ndarray:
    arr = np.asarray(a, dtype=np.float64).copy()
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True)
class Signal:
    """Immutable sampled signal.

    times: strictly increasing sample instants (units are opaque).
    values: one finite value per sample.
    id: optional label carried through the pipeline into reports.
    """

    times: np.ndarray
    values: np.ndarray
    id: str | None = field(default=None)

    def __post_init__(self):
        times = _as_readonly(self.times)
        values = _as_readonly(self.values)
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "values", values)
        if times.ndim != 1 or values.ndim != 1 or len(times) != len(values):
            raise InvalidSignalError("times and values must be 1-D and equally long")
        if len(times) == 0:
            raise InvalidSignalError("a signal needs at least one sample")
        if not np.all(np.isfinite(times)):
            raise InvalidSignalError("non-finite time")
        if not np.all(np.isfinite(values)):
            raise InvalidSignalError("non-finite value")
        if len(times) > 1:
            diffs = np.diff(times)
            if np.any(diffs <= 0):
                i = int(np.argmax(diffs <= 0))
                if times[i] == times[i + 1]:
                    raise InvalidSignalError(f"duplicate time {times[i]!r}")
                raise InvalidSignalError("times must be strictly increasing")

    def __len__(self) -> int:
        return len(self.times)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Signal):
            return NotImplemented
        return (
            self.id == other.id
            and np.array_equal(self.times, other.times)
            and np.array_equal(self.values, other.values)
        )

    @property
    def samples(self) -> list[tuple[float, float]]:
        return [(float(t), float(v)) for t, v in zip(self.times, self.values)]

    @classmethod
    def from_samples(cls, samples, id: str | None = None) -> "Signal":
        if len(samples) == 0:
            raise InvalidSignalError("a signal needs at least one sample")
        times = [s[0] for s in samples]
        values = [s[1] for s in samples]
        return cls(np.asarray(times, float), np.asarray(values, float), id=id)


def _sort_and_check(times: list[float], values: list[float], id: str | None) -> Signal:
    order = sorted(range(len(times)), key=lambda i: times[i])
    t_sorted = [times[i] for i in order]
    for a, b in zip(t_sorted, t_sorted[1:]):
        if a == b:
            raise InvalidSignalError(f"duplicate time {a!r}")
    return Signal(
        np.asarray(t_sorted, float),
        np.asarray([values[i] for i in order], float),
        id=id,
    )


def _parse_number(token: str, what: str, line: int) -> float:
    try:
        x = float(token)
    except ValueError:
        raise ParseError(f"bad {what} {token!r}", line=line) from None
    if not np.isfinite(x):
        raise InvalidSignalError(f"line {line}: non-finite {what} {token!r}")
    return x


def load_signal(source, format: str = "csv", id: str | None = None) -> Signal:
    """Read a signal from a path (str/PathLike), bytes, or a stream.

    CSV: two columns ``time,value``, optional header, '.' decimal separator.
    JSON: ``{"id": ..., "samples": [[t, v], ...]}``.
    Unsorted input is sorted by time; duplicate times are rejected.
    """
    if format not in ("csv", "json"):
        raise ValueError(f"unknown format {format!r}")
    text = _read_text(source)
    if format == "json":
        return _signal_from_json(text, id)
    return _signal_from_csv(text, id)


def _read_text(source) -> str:
    if isinstance(source, (str, os.PathLike)):
        with open(source, "rb") as fh:
            return fh.read().decode("utf-8")
    if isinstance(source, bytes):
        return source.decode("utf-8")
    data = source.read()
    if isinstance(data, bytes):
        return data.decode("utf-8")
    return data


def _signal_from_csv(text: str, id: str | None) -> Signal:
    times: list[float] = []
    values: list[float] = []
    reader = csv.reader(io.StringIO(text))
    for lineno, row in enumerate(reader, start=1):
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        cells = [c.strip() for c in row]
        if lineno == 1 and cells and not _is_number(cells[0]):
            continue  # header row
        if len(cells) != 2:
            raise ParseError(f"expected 2 columns, got {len(cells)}", line=lineno)
        times.append(_parse_number(cells[0], "time", lineno))
        values.append(_parse_number(cells[1], "value", lineno))
    if not times:
        raise ParseError("no samples found", line=1)
    return _sort_and_check(times, values, id)


def _is_number(token: str) -> bool:
    try:
        float(token)
        return True
    except ValueError:
        return False


def _signal_from_json(text: str, id: str | None) -> Signal:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", line=exc.lineno) from None
    if not isinstance(obj, dict) or "samples" not in obj:
        raise ParseError('expected an object with a "samples" array', line=1)
    samples = obj["samples"]
    if not isinstance(samples, list) or not samples:
        raise ParseError('"samples" must be a non-empty array', line=1)
    times, values = [], []
    for i, pair in enumerate(samples):
        if not isinstance(pair, (list, tuple)) or len(pair) != 2:
            raise ParseError(f"sample {i} is not a [t, v] pair", line=1)
        t, v = float(pair[0]), float(pair[1])
        if not np.isfinite(t) or not np.isfinite(v):
            raise InvalidSignalError(f"sample {i}: non-finite entry")
        times.append(t)
        values.append(v)
    sig_id = obj.get("id") if id is None else id
    return _sort_and_check(times, values, sig_id)


def save_signal(f: Signal, path, format: str = "json") -> None:
    """Write a signal; the JSON format round-trips bit-exactly."""
    if format == "json":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(signal_to_json(f))
            fh.write("\n")
    elif format == "csv":
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write("time,value\n")
            for t, v in zip(f.times, f.values):
                fh.write(f"{format_float(float(t))},{format_float(float(v))}\n")
    else:
        raise ValueError(f"unknown format {format!r}")


def signal_to_json(f: Signal) -> str:
    parts = []
    if f.id is not None:
        parts.append(f'"id": {json.dumps(f.id)}')
    rows = ", ".join(
        f"[{format_float(float(t))}, {format_float(float(v))}]"
        for t, v in zip(f.times, f.values)
    )
    parts.append(f'"samples": [{rows}]')
    return "{" + ", ".join(parts) + "}"


def same_grid(f: Signal, g: Signal) -> bool:
    if len(f) != len(g):
        return False
    return bool(
        np.allclose(f.times, g.times, rtol=GRID_RTOL, atol=GRID_RTOL)
    )


def sup_distance(f: Signal, g: Signal) -> float:
    """Max pointwise |f - g| over a shared time grid."""
    if not same_grid(f, g):
        raise IncompatibleSignalsError(
            f"signals do not share a time grid ({len(f)} vs {len(g)} samples)"
        )
    return float(np.max(np.abs(f.values - g.values)))


def shift(f: Signal, dx: float, dy: float) -> Signal:
    """Translate every sample by (dx, dy); ordering is preserved."""
    times = f.times + dx
    values = f.values + dy
    if not (np.all(np.isfinite(times)) and np.all(np.isfinite(values))):
        raise InvalidSignalError("shift overflowed to a non-finite sample")
    return Signal(times, values, id=f.id)


def perturb(f: Signal, delta: float, seed: int) -> Signal:
    """Add i.i.d. uniform noise in [-delta, delta] from a PCG64 stream.

    Deterministic given the seed, and sup_distance(f, result) <= delta.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    rng = np.random.Generator(np.random.PCG64(seed))
    noise = rng.uniform(-delta, delta, size=len(f))
    return Signal(f.times, f.values + noise, id=f.id)
