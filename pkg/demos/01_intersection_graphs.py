"""Curves in, graphs out.

Builds intersection graphs from hand-made and random polygonal curves, and
shows the standardness checks rejecting degenerate inputs.
"""

from stringsep import (
    PolylineCurve,
    StringRepresentation,
    intersection_graph,
    random_segment_instance,
    segments_intersect,
)
from stringsep.errors import StandardnessError

# Exact predicates on integer segments: no epsilons anywhere.
print("crossing diagonals:", segments_intersect((0, 0), (2, 2), (0, 2), (2, 0)).value)
print("collinear overlap: ", segments_intersect((0, 0), (2, 0), (1, 0), (3, 0)).value)

# Three curves: a horizontal spine touched by two verticals -> a path graph.
rep = StringRepresentation(
    (
        PolylineCurve("spine", ((0, 0), (4, 0))),
        PolylineCurve("left", ((1, -1), (1, 1))),
        PolylineCurve("right", ((3, -1), (3, 1))),
    )
)
g, counts = intersection_graph(rep)
print(f"\nhand-made instance: n={g.n}, edges={g.edges}")
print("intersection points per adjacent pair:", counts)

# A point where three curves meet is not a standard representation.
bad = StringRepresentation(
    (
        PolylineCurve("a", ((-2, 0), (2, 0))),
        PolylineCurve("b", ((0, -2), (0, 2))),
        PolylineCurve("c", ((-2, -2), (2, 2))),
    )
)
try:
    intersection_graph(bad)
except StandardnessError as err:
    print("\nrejected degenerate input:", err)

# Random standard segment instances are the string-graph source for the
# separator experiments.
rep = random_segment_instance(25, seed=7)
g, _ = intersection_graph(rep)
print(f"\nrandom 25-segment instance: n={g.n}, m={g.m}, connected={g.is_connected()}")
