"""Express lambda_g in boundary classes via the zero DR vector.

Setting every ramification value to zero makes the double ramification
cycle equal to (-1)^g * lambda_g, the top Chern class of the Hodge
bundle.  Reading off the resulting decorated graph sums reproduces the
classical expressions: lambda_1 is 1/24 of the loop graph (that is,
delta_0 / 12), and the higher tables grow quickly but stay exact.

The script prints the full tables for g = 1, 2, 3 and summarizes g = 4,
then confirms the towers of purely 1-edge-loop graphs carry coefficient
(1/24)^g / g!.
"""

from __future__ import annotations

import math
import time
from fractions import Fraction

from drtaut.pixton import lambda_expression

# Genus 1 has no stable unmarked curves, so lambda_1 lives on the
# one-pointed space; from genus 2 on the unmarked space is fine.
for g, n in [(1, 1), (2, 0), (3, 0)]:
    cls = lambda_expression(g, n)
    marked = f" with {n} marking" if n else ""
    print(f"lambda_{g} on genus {g}{marked} ({cls.n_terms} terms):")
    print(cls.text())
    print()

t0 = time.time()
l4 = lambda_expression(4)
elapsed = time.time() - t0
print(f"lambda_4: {l4.n_terms} terms, computed in {elapsed:.1f}s")

# The graph with a single vertex and g self-loops, no psi decoration,
# always appears with coefficient (1/24)^g / g!: one factor 1/24 per
# loop and one 1/g! because the loops are interchangeable.
print()
for g in (1, 2, 3, 4):
    cls = lambda_expression(g, 1 if g == 1 else 0)
    expected = Fraction(1, 24) ** g / math.factorial(g)
    # degree == g with g edges forces every psi and kappa exponent to 0
    towers = [
        c
        for d, c in cls.items()
        if len(d.graph.genera) == 1
        and len(d.graph.edges) == g
        and all(u == v for u, v in d.graph.edges)
        and d.degree == g
    ]
    assert towers == [expected]
    print(f"g={g}: pure {g}-loop coefficient {towers[0]} "
          f"== (1/24)^{g}/{g}!")
