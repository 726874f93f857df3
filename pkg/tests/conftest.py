import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

from hypothesis import strategies as st

from cyclerad.complexes import EmbeddedComplex, PointCloud
from cyclerad.filtrations import Filtration


@st.composite
def point_clouds(draw, min_points=3, max_points=10, dim=2):
    n = draw(st.integers(min_points, max_points))
    # distinct jittered grid points keep geometry non-degenerate enough
    cells = draw(
        st.lists(
            st.tuples(st.integers(0, 6), st.integers(0, 6)),
            min_size=n,
            max_size=n,
            unique=True,
        )
    )
    jitter = draw(
        st.lists(
            st.tuples(
                st.floats(-0.2, 0.2, allow_nan=False),
                st.floats(-0.2, 0.2, allow_nan=False),
            ),
            min_size=n,
            max_size=n,
        )
    )
    coords = [
        tuple(float(c) + e for c, e in zip(cell, eps))[:dim]
        for cell, eps in zip(cells, jitter)
    ]
    return PointCloud(coords)


@st.composite
def embedded_complexes(draw, min_points=3, max_points=8, max_dim=2, max_top_cells=10):
    cloud = draw(point_clouds(min_points=min_points, max_points=max_points))
    n = cloud.n_points
    top = draw(
        st.lists(
            st.sets(st.integers(0, n - 1), min_size=1, max_size=max_dim + 1),
            min_size=1,
            max_size=max_top_cells,
        )
    )
    # every vertex participates so sites cover the cloud
    simplices = [tuple(sorted(s)) for s in top] + [(v,) for v in range(n)]
    return EmbeddedComplex(cloud, simplices)


@st.composite
def filtered_complexes(draw, min_points=3, max_points=8, max_dim=2, max_top_cells=10):
    """A random complex together with a random valid simplexwise filtration."""
    complex_ = draw(
        embedded_complexes(
            min_points=min_points,
            max_points=max_points,
            max_dim=max_dim,
            max_top_cells=max_top_cells,
        )
    )
    raw = {}
    for s in complex_.all_simplices():
        raw[s] = draw(st.floats(0.0, 10.0, allow_nan=False, allow_infinity=False))
    # push values up the face poset so every coface appears no earlier
    value = {}
    for s in sorted(raw, key=lambda t: (len(t), t)):
        value[s] = raw[s]
        for k in range(len(s)):
            f = s[:k] + s[k + 1 :]
            if f:
                value[s] = max(value[s], value.get(f, 0.0))
    order = sorted(value, key=lambda t: (value[t], len(t), t))
    return Filtration(complex_, order, [value[s] for s in order])


@st.composite
def complex_with_cycle(draw):
    """A complex plus a 1-cycle assembled from essential cycles and
    boundaries of the lowest site's ordering."""
    from cyclerad.complexes import boundary_columns
    from cyclerad.optimize import _site_essential_cycles
    from cyclerad.z2 import ChainVector

    complex_ = draw(embedded_complexes())
    essential, _ = _site_essential_cycles(complex_, 0, 1)
    bounds = boundary_columns(complex_, 1)
    parts = list(essential) + [bounds.column(j) for j in range(bounds.n_cols)]
    chosen = draw(st.lists(st.booleans(), min_size=len(parts), max_size=len(parts)))
    cycle = ChainVector(complex_.n_simplices(1), [])
    for flag, part in zip(chosen, parts):
        if flag:
            cycle = cycle ^ part
    return complex_, cycle
