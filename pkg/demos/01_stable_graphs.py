"""Walk through stable graph enumeration.

A stable graph records how a nodal curve degenerates: vertices carry
genera, edges are nodes, legs are marked points.  Stability requires
every genus-0 vertex to support at least three special points and every
genus-1 vertex at least one.  The enumeration is exhaustive up to
isomorphism and each graph knows its automorphism count and first Betti
number (the number of independent loops).
"""

from __future__ import annotations

import json

from drtaut.graphs import (
    automorphism_order,
    enumerate_stable_graphs,
    first_betti,
    graph_to_json,
)

for g, n in [(0, 4), (1, 1), (1, 2), (2, 0), (2, 1)]:
    graphs = enumerate_stable_graphs(g, n)
    print(f"genus {g} with {n} markings: {len(graphs)} stable graphs")
    for G in graphs:
        print(
            f"  genera={G.genera} edges={G.edges} legs={G.legs}"
            f"  |Aut|={automorphism_order(G)} b={first_betti(G)}"
        )
    print()

# Degree bounds matter: a class of degree d only sees graphs with at
# most d edges, so the enumeration accepts a cap.
capped = enumerate_stable_graphs(2, 0, max_edges=1)
print(f"genus 2, at most one edge: {len(capped)} graphs")

# Graphs serialize to a vertex/half-edge JSON form, round-trip safe.
sample = enumerate_stable_graphs(1, 2)[0]
print("\nserialized form of one graph:")
print(json.dumps(graph_to_json(sample), indent=2, sort_keys=True))
