"""The full pipeline: random curves -> intersection graph -> balanced separator.

String graphs on m edges have separators of size O(sqrt(m) log m).  The
pipeline realizes the constructive route: unit vertex weights, a random
line embedding of the shortest-path metric, a min-cut sweep, and recursion
on oversized parts.  Every output is certified by check_separator, and the
sizes here sit comfortably under the sqrt(m) log(m) shape.
"""

import math

from stringsep import check_separator, find_separator, intersection_graph, random_segment_instance
from stringsep.cuts import min_separator_exact
from stringsep.graphs import generate

print(f"{'curves':>7} {'n':>4} {'m':>5} {'|S|':>4} {'|A|':>4} {'|B|':>4}  size / (sqrt(m) ln(m+2))")
for count in (20, 30, 40, 50, 60):
    rep = random_segment_instance(count, seed=count)
    g, _ = intersection_graph(rep)
    res = find_separator(g, seed=1)
    ok, why = check_separator(g, res.cut)
    assert ok, why
    shape = res.size / (math.sqrt(g.m) * math.log(g.m + 2)) if g.m >= 2 else 0.0
    a, b, _n = res.balance
    print(f"{count:>7} {g.n:>4} {g.m:>5} {res.size:>4} {a:>4} {b:>4}  {shape:.3f}")

# On small graphs the exact brute-force oracle shows how close the pipeline gets.
print("\npipeline vs exact minimum separator:")
for seed in range(4):
    g = generate("gnp_connected", (10, 35), seed=seed)
    exact, _ = min_separator_exact(g)
    res = find_separator(g, seed=2)
    print(f"  gnp n={g.n} m={g.m}: pipeline={res.size}  exact={exact}")
