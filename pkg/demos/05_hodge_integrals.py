"""Evaluate Hodge integrals by pairing boundary expressions with psi.

Once lambda_g is written as a sum of decorated boundary graphs, any
integral against psi monomials reduces to genus-0 and lower-genus psi
integrals on the vertices, which close under the string and dilaton
recursions.  Each evaluator below computes its value along two fully
independent routes and raises ArithmeticError on any mismatch, so a
printed number is already a verified number:

  * hodge_triple(g): the triple lambda_{g+1} lambda_g lambda_{g-1}
    integrated over the unmarked genus g+1 space,
  * dr_ab_integral(g, a): lambda_g lambda_{g-1} paired against the
    two-point cycle for (a, -a), a polynomial in a,
  * socle_integral(g, p, q): Faber's socle pairings
    psi_1^p psi_2^q lambda_g lambda_{g-1} with p + q = g,
  * psi_sum_lambda(g): the binomial sum (psi_1 + psi_2)^g against
    lambda_g lambda_{g-1}.
"""

from __future__ import annotations

from fractions import Fraction

from drtaut.intersect import (
    dr_ab_integral,
    hodge_triple,
    pair_with_psi,
    psi_sum_lambda,
    socle_integral,
    vanishing_probe,
)
from drtaut.pixton import lambda_expression
from drtaut.weightings import DRVector

print("triple Hodge integrals over the unmarked genus g+1 space:")
for g in (1, 2, 3):
    print(f"  lambda_{g + 1} lambda_{g} lambda_{g - 1}: {hodge_triple(g)}")
print()

print("lambda_g lambda_{g-1} against the two-point cycle for (a, -a):")
for g, a in [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)]:
    value = dr_ab_integral(g, a)
    expect = Fraction(a * a, 24) if g == 1 else Fraction(a**4, 2880)
    assert value == expect
    print(f"  g={g}, a={a}: {value}")
print("  (quadratic in a for g=1, quartic for g=2)")
print()

print("socle pairings psi_1^p psi_2^q lambda_3 lambda_2, p+q=3:")
for p in range(4):
    q = 3 - p
    print(f"  p={p}, q={q}: {socle_integral(3, p, q)}")
print()

print(f"(psi_1+psi_2)^3 against lambda_3 lambda_2: {psi_sum_lambda(3)}")
print()

# The pairing machinery also works directly on any boundary expression:
# integrate lambda_2 * psi_1^2 over the one-pointed genus 2 space.
l2 = lambda_expression(2, 1)
print(f"integral of lambda_2 psi_1^2, genus 2 with one marking: "
      f"{pair_with_psi(l2, (2,))}")
print()

# Above degree g the polynomial part of the graph sum vanishes;
# integrating a probe class against complementary psi monomials must
# give exactly zero in every slot.
probes = [
    (DRVector(1, (1, -1)), 2),
    (DRVector(2, (0,)), 3),
]
for dr, d in probes:
    values = vanishing_probe(dr, d)
    assert values and all(v == 0 for v in values)
    print(f"degree-{d} probe at genus {dr.genus}: "
          f"{len(values)} pairings, all exactly 0")
