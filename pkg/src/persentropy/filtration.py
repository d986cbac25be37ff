"""Lower-star filtration of a signal as a filtered path complex.

Vertices carry the sample values; each edge between consecutive samples
filters at the max of its endpoint values, so every simplex enters the
filtration together with the lower star of its maximum vertex.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signals import Signal

VERTEX = 0
EDGE = 1


@dataclass(frozen=True)
class FilteredComplex:
    """Path complex with one filter value per simplex.

    vertex_filters[i] is the value of sample i; edge_filters[i] belongs to
    the edge {i, i+1} and equals max(vertex_filters[i], vertex_filters[i+1]).
    """

    vertex_filters: np.ndarray
    edge_filters: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vertex_filters, dtype=np.float64).copy()
        e = np.asarray(self.edge_filters, dtype=np.float64).copy()
        v.flags.writeable = False
        e.flags.writeable = False
        object.__setattr__(self, "vertex_filters", v)
        object.__setattr__(self, "edge_filters", e)
        if len(e) != max(len(v) - 1, 0):
            raise ValueError("a path complex has vertex_count - 1 edges")
        if len(v) == 0:
            raise ValueError("empty complex")
        if len(e) and not np.array_equal(e, np.maximum(v[:-1], v[1:])):
            raise ValueError("edge filters must equal the max of their endpoints")

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_filters)

    @property
    def edge_count(self) -> int:
        return len(self.edge_filters)

    @property
    def simplex_count(self) -> int:
        return self.vertex_count + self.edge_count

    @property
    def max_filter(self) -> float:
        # edges filter at vertex maxima, so the global max is a vertex value
        return float(np.max(self.vertex_filters))

    def to_debug_dict(self) -> dict:
        return {
            "vertices": [float(x) for x in self.vertex_filters],
            "edges": [float(x) for x in self.edge_filters],
        }


@dataclass(frozen=True)
class SimplexSchedule:
    """Total order of simplices: (index, dim, filter) sorted by filter.

    Ties are broken symbolically (dim, then index): every vertex of a tied
    filter value precedes every edge of that value, reproducing the effect
    of the usual infinitesimal linear-ramp perturbation without changing
    any stored value. indices[k] is a vertex index when dims[k] == VERTEX
    and the left-endpoint edge index when dims[k] == EDGE.
    """

    indices: np.ndarray
    dims: np.ndarray
    filters: np.ndarray

    def __len__(self) -> int:
        return len(self.indices)

    def entries(self) -> list[tuple[int, int, float]]:
        return [
            (int(i), int(d), float(f))
            for i, d, f in zip(self.indices, self.dims, self.filters)
        ]


def lower_star_filtration(f: Signal) -> FilteredComplex:
    """Build the filtered path complex of a signal (values in time order)."""
    v = np.asarray(f.values, dtype=np.float64)
    e = np.maximum(v[:-1], v[1:]) if len(v) > 1 else np.empty(0)
    return FilteredComplex(v, e)


def schedule(K: FilteredComplex) -> SimplexSchedule:
    """Deterministic total order by (filter value, dim, index)."""
    nv, ne = K.vertex_count, K.edge_count
    filters = np.concatenate([K.vertex_filters, K.edge_filters])
    dims = np.concatenate(
        [np.zeros(nv, dtype=np.int8), np.ones(ne, dtype=np.int8)]
    )
    indices = np.concatenate(
        [np.arange(nv, dtype=np.int64), np.arange(ne, dtype=np.int64)]
    )
    # last lexsort key is the primary one
    order = np.lexsort((indices, dims, filters))
    return SimplexSchedule(indices[order], dims[order], filters[order])


def scheduled_edge_order(K: FilteredComplex) -> np.ndarray:
    """Edge indices sorted by (filter, index): the schedule restricted to edges."""
    ne = K.edge_count
    return np.lexsort((np.arange(ne), K.edge_filters))
