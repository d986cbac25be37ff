"""Empirical certification of entropy stability under signal perturbation.

Two halves: the diagram half (exact bottleneck distance, checked against
the sup-norm of the perturbation) and the entropy half (an explicit bound
epsilon = n * omega(delta') built from the continuity modulus of the
entropy summand h(x) = -x ln x).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .entropy import persistent_entropy
from .errors import BoundInapplicableError
from .filtration import lower_star_filtration
from .jsonio import dumps
from .persistence import Barcode, compute_barcode
from .signals import Signal, sup_distance

# largest delta' the shipped modulus accepts; beyond it report only the
# diagram-level bound
MODULUS_MAX_ARG = 1.0 / (2.0 * math.e)

DIAGRAM_BOUND_SLACK = 1e-12


@dataclass(frozen=True)
class Diagram:
    """Planar reading of a barcode: (birth, death) points, death finite.

    The unbounded bar is truncated with the same m = max_filter + 1
    substitution entropy uses, so both views of a barcode agree.
    """

    points: np.ndarray

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64).reshape(-1, 2).copy()
        pts.flags.writeable = False
        object.__setattr__(self, "points", pts)
        if len(pts) and not np.all(pts[:, 1] > pts[:, 0]):
            raise ValueError("diagram points must satisfy death > birth")

    @classmethod
    def from_barcode(cls, B: Barcode) -> "Diagram":
        m = B.max_filter + 1.0
        pts = [
            (iv.birth, m if iv.death is None else iv.death) for iv in B.intervals
        ]
        return cls(np.asarray(pts, dtype=np.float64).reshape(-1, 2))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def total_length(self) -> float:
        if len(self.points) == 0:
            return 0.0
        return float(np.sum(self.points[:, 1] - self.points[:, 0]))


@dataclass(frozen=True)
class StabilityReport:
    """One perturbation experiment: distances, entropies, and both bounds.

    bound_epsilon and entropy_bound_holds are None when delta' falls
    outside the modulus' range and only the diagram bound applies.
    """

    sup_dist: float
    bottleneck: float
    entropy_f: float
    entropy_g: float
    entropy_gap: float
    bound_epsilon: float | None
    diagram_bound_holds: bool
    entropy_bound_holds: bool | None

    def to_dict(self) -> dict:
        return {
            "sup_dist": self.sup_dist,
            "bottleneck": self.bottleneck,
            "entropy_f": self.entropy_f,
            "entropy_g": self.entropy_g,
            "entropy_gap": self.entropy_gap,
            "bound_epsilon": self.bound_epsilon,
            "diagram_bound_holds": self.diagram_bound_holds,
            "entropy_bound_holds": self.entropy_bound_holds,
        }

    def to_json(self, indent: int = 0) -> str:
        return dumps(self.to_dict(), indent=indent)


def entropy_term(x: float) -> float:
    """h(x) = -x ln x on [0, 1], with h(0) = 0."""
    if x == 0.0:
        return 0.0
    return -x * math.log(x)


def entropy_term_modulus(t: float) -> float:
    """Over-approximating continuity modulus of h: omega(t) = 2t(1 - ln 2t).

    Valid (and increasing) for 0 <= t <= 1/(2e); whenever |x - y| <= t,
    |h(x) - h(y)| <= omega(t). The looseness is deliberate: the theorem
    only needs some valid epsilon.
    """
    if t < 0:
        raise ValueError("modulus argument must be non-negative")
    if t == 0.0:
        return 0.0
    if t > MODULUS_MAX_ARG:
        raise BoundInapplicableError(
            f"delta' = {t:.6g} exceeds the modulus range 1/(2e) = "
            f"{MODULUS_MAX_ARG:.6g}"
        )
    return 2.0 * t * (1.0 - math.log(2.0 * t))


def _bound_from_constants(n: int, total_length: float, delta: float) -> float:
    """epsilon = n * omega(4 n delta / L')."""
    if n <= 0 or total_length <= 0:
        raise ValueError("bound needs a non-empty diagram of positive length")
    if delta < 0:
        raise ValueError("delta must be non-negative")
    delta_prime = 4.0 * n * delta / total_length
    return n * entropy_term_modulus(delta_prime)


def entropy_stability_bound(D_g: Diagram, delta: float) -> float:
    """Entropy-gap bound for a perturbation of sup-norm at most delta.

    Uses n = |D_g| and L' = total bar length of D_g; raises
    BoundInapplicableError when delta' = 4 n delta / L' exceeds 1/(2e).
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    return _bound_from_constants(len(D_g), D_g.total_length, delta)


def delta_for_epsilon(D_g: Diagram, epsilon: float) -> float:
    """Invert the bound: the largest delta whose epsilon stays below the goal.

    Bisection on the monotone map delta -> bound(delta), restricted to the
    deltas the modulus accepts.
    """
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    n, total = len(D_g), D_g.total_length
    delta_max = MODULUS_MAX_ARG * total / (4.0 * n)
    if _bound_from_constants(n, total, delta_max) <= epsilon:
        return delta_max
    lo, hi = 0.0, delta_max
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if _bound_from_constants(n, total, mid) <= epsilon:
            lo = mid
        else:
            hi = mid
    return lo


def _candidate_radii(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    halves_a = (A[:, 1] - A[:, 0]) / 2.0 if len(A) else np.empty(0)
    halves_b = (B[:, 1] - B[:, 0]) / 2.0 if len(B) else np.empty(0)
    parts = [np.asarray([0.0]), halves_a, halves_b]
    if len(A) and len(B):
        parts.append(_linf_matrix(A, B).ravel())
    return np.unique(np.concatenate(parts))


def _linf_matrix(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.maximum(
        np.abs(A[:, 0, None] - B[None, :, 0]),
        np.abs(A[:, 1, None] - B[None, :, 1]),
    )


def _feasible(dist, halves_a, halves_b, r: float):
    """Perfect-matching test for radius r; returns the row matching or None.

    Bipartite graph: rows are A's points then B's diagonal projections,
    columns are B's points then A's projections. Off-diagonal matches
    need L-inf distance <= r, a diagonal match needs half the bar's
    persistence <= r, and projections pair with each other freely.
    """
    n1, n2 = len(halves_a), len(halves_b)
    size = n1 + n2
    rows, cols = [], []
    if n1 and n2:
        i, j = np.nonzero(dist <= r)
        rows.append(i)
        cols.append(j)
    (ia,) = np.nonzero(halves_a <= r)
    rows.append(ia)
    cols.append(ia + n2)
    (jb,) = np.nonzero(halves_b <= r)
    rows.append(jb + n1)
    cols.append(jb)
    if n1 and n2:
        jj, ii = np.meshgrid(np.arange(n2), np.arange(n1))
        rows.append(jj.ravel() + n1)
        cols.append(ii.ravel() + n2)
    row_idx = np.concatenate(rows)
    col_idx = np.concatenate(cols)
    graph = csr_matrix(
        (np.ones(len(row_idx), dtype=np.int8), (row_idx, col_idx)),
        shape=(size, size),
    )
    match = maximum_bipartite_matching(graph, perm_type="column")
    if np.any(match < 0):
        return None
    return match


def bottleneck_matching(D1: Diagram, D2: Diagram):
    """Exact bottleneck distance plus an optimal matching realizing it.

    Returns (distance, pairs, to_diag_1, to_diag_2) where pairs is a list
    of (i, j) index matches and the to_diag lists hold points sent to the
    diagonal. Binary search over the finite candidate set (all pairwise
    L-inf distances and all half-persistences), each step a maximum
    bipartite matching feasibility test.
    """
    A, B = D1.points, D2.points
    n1, n2 = len(A), len(B)
    if n1 == 0 and n2 == 0:
        return 0.0, [], [], []
    halves_a = (A[:, 1] - A[:, 0]) / 2.0
    halves_b = (B[:, 1] - B[:, 0]) / 2.0
    dist = _linf_matrix(A, B) if n1 and n2 else None
    radii = _candidate_radii(A, B)
    lo, hi = 0, len(radii) - 1
    match_hi = _feasible(dist, halves_a, halves_b, float(radii[hi]))
    assert match_hi is not None, "max candidate radius must be feasible"
    if (m := _feasible(dist, halves_a, halves_b, float(radii[0]))) is not None:
        hi, match_hi = 0, m
    while lo < hi:
        mid = (lo + hi) // 2
        m = _feasible(dist, halves_a, halves_b, float(radii[mid]))
        if m is not None:
            hi, match_hi = mid, m
        else:
            lo = mid + 1
    r = float(radii[hi])
    pairs, diag1, diag2 = [], [], []
    for i in range(n1):
        j = int(match_hi[i])
        if j < n2:
            pairs.append((i, j))
        else:
            diag1.append(i)
    matched_b = {j for _, j in pairs}
    diag2 = [j for j in range(n2) if j not in matched_b]
    return r, pairs, diag1, diag2


def bottleneck_distance(D1: Diagram, D2: Diagram) -> float:
    """Exact bottleneck distance under the L-inf ground metric."""
    return bottleneck_matching(D1, D2)[0]


def verify_stability(f: Signal, g: Signal) -> StabilityReport:
    """Compare two same-grid signals against both stability statements.

    The entropy bound uses the proof's constants with n the larger point
    count and L' the smaller total length, matching how the optimal
    bijection pads the smaller diagram with zero-length diagonal points.
    """
    sup = sup_distance(f, g)
    Bf = compute_barcode(lower_star_filtration(f))
    Bg = compute_barcode(lower_star_filtration(g))
    Df = Diagram.from_barcode(Bf)
    Dg = Diagram.from_barcode(Bg)
    d_b = bottleneck_distance(Df, Dg)
    h_f = persistent_entropy(Bf).raw_entropy
    h_g = persistent_entropy(Bg).raw_entropy
    gap = abs(h_f - h_g)
    n = max(len(Df), len(Dg))
    l_prime = min(Df.total_length, Dg.total_length)
    try:
        eps = _bound_from_constants(n, l_prime, sup)
        holds = gap <= eps
    except BoundInapplicableError:
        eps, holds = None, None
    return StabilityReport(
        sup_dist=sup,
        bottleneck=d_b,
        entropy_f=h_f,
        entropy_g=h_g,
        entropy_gap=gap,
        bound_epsilon=eps,
        diagram_bound_holds=d_b <= sup + DIAGRAM_BOUND_SLACK,
        entropy_bound_holds=holds,
    )
