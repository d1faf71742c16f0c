"""Some drawings cannot be cheap: the exponential-crossing family.

An abstract topological graph lists which edge pairs may cross.  This
family's k-th chord is forced to cross the frame edge {a,b} at least
2^(k-1) times in any legal drawing; the shipped realization achieves those
counts and passes the validator with zero forbidden crossings.

Replacing vertices with tiny loop strings and edges with trimmed edge
strings turns any valid drawing into a string representation whose
intersection graph is predicted exactly (vertices + edges, incidences +
crossings).
"""

from stringsep import (
    crossing_count,
    expo_family,
    intersection_graph,
    validate_weak_realization,
    weak_to_strings,
)

for k in range(1, 7):
    fam = expo_family(k)
    issues = validate_weak_realization(fam.realization)
    counts = [crossing_count(fam.realization, e, fam.spine) for e in fam.added]
    floors = [2 ** (i - 1) for i in range(1, k + 1)]
    print(f"k={k}: violations={len(issues)}  chord-spine crossings={counts} (floors {floors})")

fam = expo_family(4)
rep, predicted = weak_to_strings(fam.realization)
got, _ = intersection_graph(rep)
print(f"\nweak_to_strings(k=4): {len(rep.curves)} strings; "
      f"intersection graph == predicted H: {got == predicted} "
      f"(n={predicted.n}, m={predicted.m})")
