"""Exact sparsity oracles, threshold rounding, and balanced edge cuts.

Edge sparsity |E(A, V-A)| / (|A| |V-A|) is minimized by exhaustive
enumeration in exact rationals; any real-valued vertex embedding rounds to
a threshold cut at least as sparse as its line-metric ratio; and peeling
sparsest cuts accumulates a balanced edge cut with at most beta n^2
crossing edges whenever every large induced subgraph has sparsity <= beta.
"""

from fractions import Fraction

from stringsep import generate, line_to_cut_sweep, sparsity_exact
from stringsep.cuts import balanced_edge_cut

for name, g in [
    ("P6", generate("path", (6,))),
    ("C6", generate("cycle", (6,))),
    ("3x3 grid", generate("grid", (3, 3))),
    ("gnp(9, 40%)", generate("gnp_connected", (9, 40), seed=2)),
]:
    e_val, e_cut = sparsity_exact(g, "edge")
    v_val, v_cut = sparsity_exact(g, "vertex")
    print(f"{name:12s} espars={e_val} (A={sorted(e_cut.A)})  "
          f"vspars={v_val} (S={sorted(v_cut.S)})")

print("\nthreshold rounding of a hand-made embedding on the 3x3 grid:")
g = generate("grid", (3, 3))
f = [c % 3 for c in range(9)]  # column index as the embedding
cut, val = line_to_cut_sweep(g, f)
gaps_e = sum(abs(f[u] - f[v]) for u, v in g.edges)
gaps_all = sum(abs(f[u] - f[v]) for u in range(9) for v in range(u + 1, 9))
print(f"  best threshold cut A={sorted(cut.A)} espars={val}")
print(f"  line-metric ratio {gaps_e}/{gaps_all} = {Fraction(gaps_e, gaps_all)} (never smaller)")

print("\npeeling a balanced edge cut out of the 4x4 grid:")
res = balanced_edge_cut(generate("grid", (4, 4)), Fraction(1, 3))
for step in res.steps:
    print(f"  subgraph of {step.subgraph_size}: peel {sorted(step.peeled)} at sparsity {step.sparsity}")
print(f"  final |A|={len(res.cut.A)}, crossing edges {res.crossing_edges} <= "
      f"beta n^2 = {res.bound}; hypothesis held: {res.hypothesis_held}")
