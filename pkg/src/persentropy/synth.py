"""Reproducible two-class synthetic signal corpus.

Stands in for the unavailable motor-vibration dataset so the whole
classification pipeline can run end to end. Good signals are
amplitude-modulated quasi-periodic waveforms with faint broadband noise;
faulty ones add strong noise and impulsive spikes. Heavy noise multiplies
local extrema and evens out bar lengths, which pushes normalized
persistent entropy up, so faulty scores sit above good ones.

Waveforms are built from triangle waves (floor/abs/mul only, no libm
trig), so a seed reproduces the corpus bit-for-bit.
"""

from __future__ import annotations

import hashlib
import os
from dataclasses import dataclass

import numpy as np

from .jsonio import dump_path
from .signals import Signal, save_signal

DEFAULT_SEED = 2016


@dataclass(frozen=True)
class CorpusSpec:
    n_good: int = 23
    n_faulty: int = 23
    length: int = 10_000
    base_frequency: float = 0.002  # cycles per sample
    noise_level_good: float = 0.02
    noise_level_faulty: float = 0.3
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.n_good < 1 or self.n_faulty < 1:
            raise ValueError("each class needs at least one signal")
        if self.length < 8:
            raise ValueError("signals must have at least 8 samples")
        if self.base_frequency <= 0:
            raise ValueError("base_frequency must be positive")
        if self.noise_level_good < 0 or self.noise_level_faulty < 0:
            raise ValueError("noise levels must be non-negative")
        if not self.noise_level_faulty > self.noise_level_good:
            raise ValueError(
                "non-separable spec: noise_level_faulty must exceed "
                "noise_level_good for the classes to differ"
            )

    def to_dict(self) -> dict:
        return {
            "n_good": self.n_good,
            "n_faulty": self.n_faulty,
            "length": self.length,
            "base_frequency": self.base_frequency,
            "noise_level_good": self.noise_level_good,
            "noise_level_faulty": self.noise_level_faulty,
            "seed": self.seed,
        }


def _triangle(phase: np.ndarray) -> np.ndarray:
    """Triangle wave in [-1, 1] with period 1 in phase units."""
    frac = phase - np.floor(phase)
    return 4.0 * np.abs(frac - 0.5) - 1.0


def _base_waveform(rng: np.random.Generator, length: int, base_freq: float) -> np.ndarray:
    t = np.arange(length, dtype=np.float64)
    f1 = base_freq * (1.0 + 0.2 * rng.uniform(-1.0, 1.0))
    f2 = f1 * rng.uniform(2.1, 3.3)
    f_env = f1 / rng.uniform(8.0, 16.0)
    a2 = rng.uniform(0.25, 0.55)
    envelope = 0.55 + 0.45 * _triangle(f_env * t + rng.uniform(0.0, 1.0))
    main = _triangle(f1 * t + rng.uniform(0.0, 1.0))
    secondary = a2 * _triangle(f2 * t + rng.uniform(0.0, 1.0))
    return envelope * main + secondary


def _make_signal(spec: CorpusSpec, index: int, label: str) -> Signal:
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([spec.seed, index])))
    values = _base_waveform(rng, spec.length, spec.base_frequency)
    noise = spec.noise_level_good if label == "good" else spec.noise_level_faulty
    values = values + rng.uniform(-noise, noise, size=spec.length)
    if label == "faulty":
        n_spikes = int(rng.integers(spec.length // 1000 + 1, spec.length // 200 + 2))
        positions = rng.choice(spec.length, size=n_spikes, replace=False)
        amplitudes = rng.uniform(1.5, 3.0, size=n_spikes) * rng.choice(
            [-1.0, 1.0], size=n_spikes
        )
        values[positions] += amplitudes
    times = np.arange(spec.length, dtype=np.float64)
    return Signal(times, values, id=f"{label}-{index:03d}")


def generate_corpus(spec: CorpusSpec) -> list[tuple[Signal, str]]:
    """Deterministic corpus: n_good good signals then n_faulty faulty ones."""
    out = []
    for i in range(spec.n_good):
        out.append((_make_signal(spec, i, "good"), "good"))
    for i in range(spec.n_faulty):
        out.append((_make_signal(spec, spec.n_good + i, "faulty"), "faulty"))
    return out


def performance_signal(length: int = 180_000, seed: int = DEFAULT_SEED) -> Signal:
    """One full-length noisy signal for throughput measurements."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed, 10**6])))
    values = _base_waveform(rng, length, 0.002)
    values = values + rng.uniform(-0.3, 0.3, size=length)
    return Signal(np.arange(length, dtype=np.float64), values, id="performance")


def corpus_digest(corpus) -> str:
    """SHA-256 over ids, labels and raw sample bytes; equal iff bit-identical."""
    h = hashlib.sha256()
    for sig, label in corpus:
        h.update(str(sig.id).encode())
        h.update(label.encode())
        h.update(np.ascontiguousarray(sig.times).tobytes())
        h.update(np.ascontiguousarray(sig.values).tobytes())
    return h.hexdigest()


def write_corpus(corpus, spec: CorpusSpec, outdir) -> None:
    """One CSV per signal plus manifest.json (ids, labels, files, spec)."""
    os.makedirs(outdir, exist_ok=True)
    entries = []
    for sig, label in corpus:
        fname = f"{sig.id}.csv"
        save_signal(sig, os.path.join(outdir, fname), format="csv")
        entries.append({"id": sig.id, "label": label, "file": fname})
    manifest = {
        "seed": spec.seed,
        "spec": spec.to_dict(),
        "signals": entries,
    }
    dump_path(manifest, os.path.join(outdir, "manifest.json"))
