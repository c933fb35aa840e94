"""Compute double ramification cycles from ramification vectors.

An integer vector A = (a_1, ..., a_n) with sum(A) = 0 determines a
cycle DR_g(A) of codimension g.  The cycle is produced as the constant
term in r of a lattice-point sum over stable graphs, scaled by 2^-g.

This script prints small examples and checks three structural facts by
direct computation: the loop-graph coefficient is independent of A in
genus 1, DR_g(-A) equals DR_g(A), and the DR normalization is exactly
2^-g times the raw graph sum.
"""

from __future__ import annotations

from fractions import Fraction

from drtaut.pixton import dr_cycle, genus1_closed, pixton_class
from drtaut.weightings import DRVector

print("DR_1(2, -2):")
cls = dr_cycle(DRVector(1, (2, -2)))
print(cls.text())
print()

print("DR_2(1, -1), term count and a sample of coefficients:")
cls2 = dr_cycle(DRVector(2, (1, -1)))
terms = cls2.items()
print(f"  {len(terms)} decorated graph terms")
for line in cls2.text().splitlines()[:4]:
    print(f"  {line}")
print("  ...")
print()

# Genus 1 closed form: the psi coefficients vary with A, the boundary
# coefficient does not.  The closed form matches the unhalved degree-1
# graph sum; halving it gives the DR cycle.  The irreducible boundary
# divisor delta_0 is half the loop graph, so the constant -1/12 printed
# on the raw loop term is the familiar -1/6 on delta_0.
print("genus 1 loop coefficient for several vectors (unhalved sum):")
for parts in [(1, -1), (3, -3), (2, 1, -3)]:
    cls = pixton_class(DRVector(1, parts), 1)
    loop = [c for d, c in cls.items() if d.graph.genera == (0,)]
    assert cls == genus1_closed(parts)
    assert dr_cycle(DRVector(1, parts)) == cls.scale(Fraction(1, 2))
    print(f"  A={parts}: loop coefficient {loop[0]}")
print()

# Parity: replacing A by -A fixes the cycle.
a = DRVector(2, (3, -1, -2))
assert dr_cycle(a) == dr_cycle(DRVector(2, (-3, 1, 2)))
print("DR_2(3,-1,-2) == DR_2(-3,1,2) : verified")

# DR_g(A) is 2^{-g} times the degree-g tautological expression, so the
# two entry points agree up to that factor.
pix = pixton_class(a, 2).scale(Fraction(1, 4))
assert pix == dr_cycle(a)
print("DR_2(3,-1,-2) == 2^-2 * degree-2 graph sum : verified")
