"""Small hand-built graphs shared by several test modules."""
import numpy as np

from centralnet import WeightedMatrix

# twelve vertices A1..A12 (indices 0..11):
#   a path A1-A2-A3-A4,
#   a square A5A6A7A8 filled in by the diagonal A6A8,
#   an open square A9A10A11A12.
# Weights are chosen so the diagonal enters before either half of the filled
# square closes, leaving the open square as the only persistent hole.
EXAMPLE_EDGES = [
    (0, 1, 1.0), (1, 2, 2.0), (2, 3, 3.0),
    (4, 5, 1.0), (5, 7, 1.5), (5, 6, 2.0), (6, 7, 3.0), (4, 7, 3.0),
    (8, 9, 1.0), (9, 10, 2.0), (10, 11, 3.0), (8, 11, 4.0),
]


def from_edges(n, edges, cap):
    a = np.full((n, n), cap + 1.0)
    np.fill_diagonal(a, 0.0)
    for i, j, w in edges:
        a[i, j] = a[j, i] = w
    return WeightedMatrix(a, cap)


def example_graph(cap=5.0):
    return from_edges(12, EXAMPLE_EDGES, cap)


def path3(cap=3.0):
    """Nodes 0-1-2 with weights w(0,1)=1, w(1,2)=1, w(0,2)=2."""
    return from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 2.0)], cap)


def four_cycle(cap=2.0):
    return from_edges(4, [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (0, 3, 1.0)], cap)
