"""Shared helpers: signal generators and independent oracles.

Oracles here deliberately avoid the package's own algorithms: local minima
are counted by direct neighbor comparison, entropy is re-summed at 60
decimal digits, and bottleneck distances come from factorial enumeration.
"""

import itertools

import mpmath
import numpy as np
import pytest

from persentropy import Barcode, Interval, Signal

DYADIC_STEP = 2.0**-20


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def dyadic_uniform(rng, n, half_range=8.0, step=DYADIC_STEP):
    """Uniform values on an exact dyadic grid; sums with dyadic shifts of
    magnitude up to ~2^20 stay exactly representable."""
    k = int(half_range / step)
    return rng.integers(-k, k + 1, size=n).astype(np.float64) * step


def random_signal(rng, n, style="walk", id=None) -> Signal:
    if style == "walk":
        values = np.cumsum(rng.uniform(-1.0, 1.0, n))
    elif style == "ties":
        values = rng.integers(0, max(2, n // 4), size=n).astype(np.float64)
    elif style == "constant":
        values = np.full(n, float(rng.integers(-3, 4)))
    elif style == "dyadic":
        values = dyadic_uniform(rng, n)
    else:
        raise ValueError(style)
    return Signal(np.arange(n, dtype=np.float64), values, id=id)


SIGNAL_STYLES = ("walk", "ties", "constant", "dyadic")


def local_min_count(values) -> int:
    """Strict local minima with plateau ties resolved leftward, matching
    the schedule's (value, index) vertex order."""
    v = [float(x) for x in values]
    n = len(v)
    count = 0
    for i in range(n):
        left_ok = i == 0 or v[i - 1] > v[i]
        right_ok = i == n - 1 or v[i + 1] >= v[i]
        if left_ok and right_ok:
            count += 1
    return count


def mp_entropy(lengths) -> float:
    """Extended-precision -sum p ln p, summed at 60 decimal digits."""
    with mpmath.workdps(60):
        ls = [mpmath.mpf(float(x)) for x in lengths]
        total = mpmath.fsum(ls)
        terms = [-(l / total) * mpmath.log(l / total) for l in ls]
        return float(mpmath.fsum(terms))


def random_barcode(rng, n) -> Barcode:
    """n bars with positive lengths, exactly one unbounded."""
    intervals = []
    max_death = 0.0
    for i in range(n - 1):
        birth = float(rng.uniform(-5.0, 5.0))
        death = birth + float(rng.uniform(0.05, 4.0))
        max_death = max(max_death, death)
        intervals.append(Interval(birth=birth, death=death, birth_vertex=i))
    unb_birth = float(rng.uniform(-5.0, 5.0))
    intervals.append(Interval(birth=unb_birth, death=None, birth_vertex=n - 1))
    max_filter = max(max_death, unb_birth) + float(rng.uniform(0.0, 2.0))
    return Barcode(tuple(intervals), max_filter=max_filter)


def brute_bottleneck(D1, D2) -> float:
    """Factorial-enumeration bottleneck distance for small diagrams."""
    A = [tuple(p) for p in D1.points]
    B = [tuple(p) for p in D2.points]

    def halfp(p):
        return (p[1] - p[0]) / 2.0

    def dist(a, b):
        return max(abs(a[0] - b[0]), abs(a[1] - b[1]))

    best = float("inf")
    n1, n2 = len(A), len(B)
    for k in range(0, min(n1, n2) + 1):
        for subset in itertools.combinations(range(n1), k):
            rest = [i for i in range(n1) if i not in subset]
            base = max((halfp(A[i]) for i in rest), default=0.0)
            for image in itertools.permutations(range(n2), k):
                cost = base
                for i, j in zip(subset, image):
                    cost = max(cost, dist(A[i], B[j]))
                for j in set(range(n2)) - set(image):
                    cost = max(cost, halfp(B[j]))
                best = min(best, cost)
    return best


def roc_brute_auc(pos, neg) -> float:
    """Pair counting without vectorization: wins + half-ties."""
    wins = ties = 0
    for p in pos:
        for q in neg:
            if p > q:
                wins += 1
            elif p == q:
                ties += 1
    return (wins + 0.5 * ties) / (len(pos) * len(neg))


@pytest.fixture(scope="session")
def fig1_signal() -> Signal:
    return Signal.from_samples([(1.0, 0.0), (2.0, 2.0), (3.0, 1.0)], id="fig1")
