"""Flow congestion against cut sparsity, exactly, on small graphs.

econg minimizes the worst edge load of a unit-demand multicommodity flow;
espars is the sparsest edge cut.  The easy duality direction says
espars * econg >= 1, with equality on paths and cliques.  The LP dual of
the congestion program is a shortest-path metric whose ratio functional
attains 1/econg exactly -- the dualization this package verifies at desk
scale.
"""

import numpy as np

from stringsep import (
    decompose_to_paths,
    edge_congestion,
    generate,
    ratio_functional,
    sparsity_exact,
    vertex_congestion,
)

for name, g in [
    ("P3", generate("path", (3,))),
    ("C4", generate("cycle", (4,))),
    ("K4", generate("complete", (4,))),
    ("Petersen-ish gnp", generate("gnp_connected", (10, 40), seed=4)),
]:
    se = edge_congestion(g)
    sv = vertex_congestion(g)
    espars, cut = sparsity_exact(g, "edge")
    print(f"{name:18s} econg={se.congestion:6.3f}  vcong={sv.congestion:6.3f}  "
          f"espars={float(espars):6.3f}  espars*econg={float(espars)*se.congestion:5.3f}")

    # the dual-optimal weights close the gap exactly
    attained = ratio_functional(g, "edge", se.load_duals)
    print(f"{'':18s} dual metric ratio = {attained:.6f}  vs  1/econg = {1/se.congestion:.6f}")

    # any other weighting can only be larger
    rng = np.random.default_rng(1)
    worst = min(ratio_functional(g, "edge", rng.random(g.m)) for _ in range(25))
    print(f"{'':18s} best of 25 random weightings: {worst:.6f} (never below)\n")

# Path decompositions turn LP arc flows back into weighted path families.
c4 = generate("cycle", (4,))
phi = decompose_to_paths(c4, edge_congestion(c4))
print("C4 diagonal commodity splits both ways:", phi.paths[(0, 2)])
