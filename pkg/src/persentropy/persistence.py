"""Zero-dimensional persistence of a filtered path complex.

compute_barcode is the production path: a union-find sweep over edges in
schedule order, near-linear in the number of simplices. oracle_barcode is
an independent check: textbook boundary-matrix reduction over Z/2 in the
same schedule order, quadratic and size-guarded, which also certifies that
no dimension-1 classes exist.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import OracleTooLargeError
from .filtration import EDGE, VERTEX, FilteredComplex, schedule, scheduled_edge_order
from .jsonio import dumps

ORACLE_MAX_SIMPLICES = 10_000


@dataclass(frozen=True)
class Interval:
    """One bar [birth, death); death None means the bar never dies.

    birth_vertex is the local minimum that created the component;
    death_edge, when finite, is the edge whose insertion merged it away.
    """

    birth: float
    death: float | None
    birth_vertex: int
    death_edge: int | None = None
    dimension: int = 0

    def __post_init__(self):
        if self.death is not None and not self.birth < self.death:
            raise ValueError("finite bars must satisfy birth < death")

    @property
    def unbounded(self) -> bool:
        return self.death is None


@dataclass(frozen=True)
class Barcode:
    """Multiset of intervals plus the complex's max filter value."""

    intervals: tuple[Interval, ...]
    max_filter: float

    def __post_init__(self):
        object.__setattr__(self, "intervals", tuple(self.intervals))

    def __len__(self) -> int:
        return len(self.intervals)

    def pairs(self) -> list[tuple[float, float | None]]:
        return [(iv.birth, iv.death) for iv in self.intervals]

    def to_dict(self) -> dict:
        return {
            "max_filter": self.max_filter,
            "intervals": [
                {"birth": iv.birth, "death": iv.death, "dim": iv.dimension}
                for iv in self.intervals
            ],
        }

    def to_json(self, indent: int = 0) -> str:
        return dumps(self.to_dict(), indent=indent)


def compute_barcode(K: FilteredComplex) -> Barcode:
    """Union-find sweep in schedule order.

    Every vertex opens a component at its own filter value. When an edge
    merges two components the younger one (larger birth; ties broken by
    the schedule position of the birth vertex, i.e. by vertex index) dies
    at the edge's filter value. Zero-length bars are dropped. The union
    keeps the elder root as representative, so a root always carries its
    component's birth.
    """
    nv = K.vertex_count
    births = K.vertex_filters.tolist()
    edge_filters = K.edge_filters.tolist()
    parent = list(range(nv))
    # birth vertex per root; birth value is births[birth_vertex[root]]
    birth_vertex = list(range(nv))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    intervals: list[Interval] = []
    for e in scheduled_edge_order(K).tolist():
        death = edge_filters[e]
        ra, rb = find(e), find(e + 1)
        # a path complex never closes a cycle
        assert ra != rb, "cycle in a path complex"
        ba, bb = birth_vertex[ra], birth_vertex[rb]
        va, vb = births[ba], births[bb]
        # elder = smaller (birth value, vertex index)
        if va < vb or (va == vb and ba < bb):
            elder, younger, birth, ydead = ra, rb, vb, bb
        else:
            elder, younger, birth, ydead = rb, ra, va, ba
        parent[younger] = elder
        if birth < death:
            intervals.append(
                Interval(birth=birth, death=death, birth_vertex=ydead, death_edge=e)
            )
    survivor = birth_vertex[find(0)]
    intervals.append(
        Interval(birth=births[survivor], death=None, birth_vertex=survivor)
    )
    intervals.sort(key=lambda iv: (iv.birth, iv.death is None, iv.death or 0.0))
    return Barcode(tuple(intervals), max_filter=K.max_filter)


def oracle_barcode(K: FilteredComplex) -> Barcode:
    """Boundary-matrix reduction over Z/2, for cross-checking compute_barcode.

    Refuses complexes above ORACLE_MAX_SIMPLICES (the reduction is
    quadratic). Raises if any edge column reduces to zero, which would mean
    a dimension-1 class; a path complex has none.
    """
    if K.simplex_count > ORACLE_MAX_SIMPLICES:
        raise OracleTooLargeError(
            f"{K.simplex_count} simplices exceed the oracle guard "
            f"({ORACLE_MAX_SIMPLICES})"
        )
    sched = schedule(K)
    positions = {}  # (dim, index) -> schedule position
    for pos, (idx, dim, _) in enumerate(sched.entries()):
        positions[(dim, idx)] = pos

    n = len(sched)
    reduced: dict[int, set[int]] = {}  # column position -> row set
    low_to_col: dict[int, int] = {}
    pair_of: dict[int, int] = {}  # birth position -> death position
    for pos in range(n):
        dim = int(sched.dims[pos])
        if dim == VERTEX:
            continue
        e = int(sched.indices[pos])
        col = {positions[(VERTEX, e)], positions[(VERTEX, e + 1)]}
        while col:
            low = max(col)
            other = low_to_col.get(low)
            if other is None:
                break
            col ^= reduced[other]
        if not col:
            raise AssertionError(
                f"edge {e} created a dimension-1 class in a path complex"
            )
        low = max(col)
        reduced[pos] = col
        low_to_col[low] = pos
        pair_of[low] = pos

    intervals = []
    for pos in range(n):
        if int(sched.dims[pos]) != VERTEX:
            continue
        birth = float(sched.filters[pos])
        v = int(sched.indices[pos])
        death_pos = pair_of.get(pos)
        if death_pos is None:
            intervals.append(Interval(birth=birth, death=None, birth_vertex=v))
        else:
            death = float(sched.filters[death_pos])
            if birth < death:
                intervals.append(
                    Interval(
                        birth=birth,
                        death=death,
                        birth_vertex=v,
                        death_edge=int(sched.indices[death_pos]),
                    )
                )
    intervals.sort(key=lambda iv: (iv.birth, iv.death is None, iv.death or 0.0))
    return Barcode(tuple(intervals), max_filter=K.max_filter)


def barcodes_equal(a: Barcode, b: Barcode) -> bool:
    """Multiset equality of (birth, death) pairs plus matching max filter."""
    return a.max_filter == b.max_filter and sorted(
        a.pairs(), key=_pair_key
    ) == sorted(b.pairs(), key=_pair_key)


def _pair_key(pair):
    birth, death = pair
    return (birth, death is None, death if death is not None else 0.0)
