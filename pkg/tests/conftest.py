import numpy as np
import pytest
from hypothesis import strategies as st

from stringsep.graphs import Graph, graph_from_pairs


@st.composite
def connected_graphs(draw, min_n=2, max_n=8):
    """Random connected graph: a random spanning tree plus random extras."""
    n = draw(st.integers(min_n, max_n))
    rng_seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(rng_seed)
    pairs = set()
    for v in range(1, n):
        u = int(rng.integers(0, v))
        pairs.add((u, v))
    extras = int(rng.integers(0, n))
    for _ in range(extras):
        u, v = sorted(int(x) for x in rng.choice(n, size=2, replace=False))
        pairs.add((u, v))
    return graph_from_pairs(n, pairs)


@st.composite
def arbitrary_graphs(draw, min_n=1, max_n=8):
    n = draw(st.integers(min_n, max_n))
    all_pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(all_pairs), unique=True, max_size=len(all_pairs))) if all_pairs else []
    return graph_from_pairs(n, chosen)


@pytest.fixture(scope="session")
def p3() -> Graph:
    return graph_from_pairs(3, [(0, 1), (1, 2)])


@pytest.fixture(scope="session")
def c4() -> Graph:
    return graph_from_pairs(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture(scope="session")
def k4() -> Graph:
    return graph_from_pairs(4, [(u, v) for u in range(4) for v in range(u + 1, 4)])
