"""Exact computation of tautological graph-sum classes and double ramification cycles.

The package computes, as formal sums of decorated stable graphs with exact
rational coefficients:

* the graph-sum classes ``P_g^{d,k}(A)`` (weighted sums over stable graphs
  and mod-r weightings, with the constant term in r extracted exactly),
* double ramification cycles ``DR_g(A) = 2^{-g} P_g^{g}(A)``,
* the pushforward classes from moduli of r-th roots and their scaled
  r-constant terms, compared term by term against the graph-sum route,
* Hodge class expressions ``lambda_g`` and exact intersection numbers used
  to pair all of the above against psi monomials.

All arithmetic is exact (``fractions.Fraction``); there is no floating
point anywhere in the pipeline.
"""

from __future__ import annotations

__version__ = "0.1.0"

__all__ = ["__version__"]
