"""Graph-sum tautological classes and double ramification cycles.

The degree-d class for ramification data ``(g, A, k)`` is assembled as a
sum over stable graphs with at most d edges.  Each graph contributes, for
every weighting mod r,

* ``exp(a_i^2 psi)`` on each leg,
* ``exp(-k^2 kappa_1)`` at each vertex,
* per edge, with ``x = w(h) w(h')`` the product of the residues on its two
  halves and ``s = psi_h + psi_{h'}``, the factor
  ``sum_m (-1)^m x^{m+1} s^m / (m+1)!``,

weighted by ``1 / (|Aut| r^b)``.  At fixed r this is evaluated literally.
The r-free class takes the constant term of the resulting polynomial in r:
for every edge-power profile the weighting sum is divisible by ``r^b``, and
the certified fit of :mod:`drtaut.weightings` extracts the coefficient
exactly.  ``DR_g(A) = 2^{-g}`` times the degree-g class, and the Hodge
class expression is ``lambda_g = (-1)^g DR_g(0, ..., 0)``.

Genus 0 and genus 1 admit closed forms with no weighting enumeration at
all (trees have a unique weighting whose edge products have constant term
``-a_I^2`` for side sum ``a_I``); these serve as independent oracles.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial
from typing import Sequence

from .graphs import StableGraph, enumerate_stable_graphs, first_betti, automorphism_order
from .tautclass import (
    DecoratedGraph,
    TautClass,
    delta0,
    delta_I,
    psi_edge_monomial,
    psi_leg_monomial,
    kappa_monomial,
    monomial_degree,
    series_degree_part,
    series_exp,
    series_mul,
    series_unit,
    trivial_class,
)
from .weightings import (
    DRVector,
    SampleSpec,
    edge_profile_sums,
    fit_edge_profiles,
)

__all__ = [
    "pixton_fixed_r",
    "pixton_class",
    "dr_cycle",
    "lambda_expression",
    "genus0_closed",
    "genus1_closed",
]


def _leg_vertex_series(graph: StableGraph, dr: DRVector, cap: int) -> dict:
    """Truncated product of leg and vertex exponentials."""
    out = series_unit(graph)
    for i, a in enumerate(dr.parts):
        if a != 0:
            x = {psi_leg_monomial(graph, i): Fraction(a * a)}
            out = series_mul(out, series_exp(x, graph, cap), cap)
    if dr.twist != 0:
        c = Fraction(-dr.twist * dr.twist)
        for v in range(graph.n_vertices):
            x = {kappa_monomial(graph, v, 1): c}
            out = series_mul(out, series_exp(x, graph, cap), cap)
    return out


def _edge_series(graph: StableGraph, profile: tuple[int, ...], cap: int) -> dict:
    """Decoration part ``prod_e (-1)^{m_e} s_e^{m_e} / (m_e+1)!``."""
    out = series_unit(graph)
    for t, m in enumerate(profile):
        coeff = Fraction((-1) ** m, factorial(m + 1))
        binom = {}
        for i in range(m + 1):
            mono = psi_edge_monomial(graph, t, i, m - i)
            binom[mono] = coeff * Fraction(factorial(m), factorial(i) * factorial(m - i))
        out = series_mul(out, binom, cap)
    return out


def _profiles(n_edges: int, cap: int) -> list[tuple[int, ...]]:
    return [
        prof
        for prof in itertools.product(range(cap + 1), repeat=n_edges)
        if sum(prof) <= cap
    ]


def _templates(graph: StableGraph, dr: DRVector, d: int):
    """Per-profile decorated series of exact degree ``d - n_edges``."""
    cap = d - graph.n_edges
    L = _leg_vertex_series(graph, dr, cap)
    out = []
    for prof in _profiles(graph.n_edges, cap):
        template = series_degree_part(
            series_mul(_edge_series(graph, prof, cap), L, cap), cap
        )
        if template:
            out.append((prof, template))
    return out


def _emit(acc: list, graph: StableGraph, template: dict, scalar: Fraction) -> None:
    if scalar == 0:
        return
    for mono, c in template.items():
        legs, edges, kappa = mono
        dg = DecoratedGraph(graph, legs, edges, kappa)
        acc.append((dg, scalar * c))


def _skip_for_zero_data(graph: StableGraph, dr: DRVector) -> bool:
    # With k = 0 and all parts zero every bridge carries residue 0, so any
    # graph with a separating edge contributes nothing in any degree.
    if dr.twist != 0 or any(dr.parts):
        return False
    return bool(graph.bridges())


def pixton_fixed_r(dr: DRVector, d: int, r: int) -> TautClass:
    """The degree-d graph-sum class at a fixed modulus r.

    Requires the mod-r admissibility ``sum a_i = k (2g - 2 + n) mod r``;
    the weighting set is empty otherwise and the class would be trivially
    zero, which is rejected as a usage error.  Example: for
    ``g = 1, k = 0, A = (0), d = 1, r = 5`` the loop-graph coefficient is 2.
    """
    g, n = dr.genus, dr.n
    if r <= 0:
        raise ValueError("modulus must be positive")
    if (dr.twist * (2 * g - 2 + n) - sum(dr.parts)) % r != 0:
        raise ValueError(f"no weightings mod {r}: admissibility fails")
    acc: list = []
    for graph in enumerate_stable_graphs(g, n, max_edges=d):
        if _skip_for_zero_data(graph, dr):
            continue
        b = first_betti(graph)
        aut = automorphism_order(graph)
        templates = _templates(graph, dr, d)
        if not templates:
            continue
        profiles = [tuple(m + 1 for m in prof) for prof, _ in templates]
        sums = edge_profile_sums(graph, r, dr, profiles)
        for (prof, template), s in zip(templates, sums):
            scalar = Fraction(s, aut * r**b)
            _emit(acc, graph, template, scalar)
    return TautClass(g, n, acc)


def pixton_class(dr: DRVector, d: int) -> TautClass:
    """The r-free degree-d class: constant term in r of the graph sum.

    For each stable graph and edge-power profile the weighting sum is
    fitted as a certified polynomial in r, checked divisible by ``r^b``,
    and its coefficient of ``r^b`` enters the class.  Requires exactly
    balanced ramification data so that every large modulus is admissible.
    """
    dr.require_exact()
    g, n = dr.genus, dr.n
    acc: list = []
    for idx, graph in enumerate(enumerate_stable_graphs(g, n, max_edges=d)):
        if _skip_for_zero_data(graph, dr):
            continue
        b = first_betti(graph)
        aut = automorphism_order(graph)
        templates = _templates(graph, dr, d)
        if not templates:
            continue
        profiles = [tuple(m + 1 for m in prof) for prof, _ in templates]
        label = f"P(g={g},n={n},k={dr.twist},d={d}) graph#{idx}"
        fits = fit_edge_profiles(graph, dr, profiles, label=label)
        for (prof, template), (poly, divisible) in zip(templates, fits):
            if not divisible:
                raise ValueError(
                    f"weighting sum not divisible by r^{b} on {label} profile {prof}"
                )
            constant = poly.coefficient(b)
            _emit(acc, graph, template, Fraction(constant, aut))
    return TautClass(g, n, acc)


def dr_cycle(dr: DRVector) -> TautClass:
    """Double ramification cycle ``2^{-g}`` times the degree-g class.

    Only untwisted (``k = 0``), exactly balanced data is accepted.
    """
    if dr.twist != 0:
        raise ValueError("the cycle is defined for untwisted data (k = 0)")
    dr.require_exact()
    return pixton_class(dr, dr.genus).scale(Fraction(1, 2**dr.genus))


def lambda_expression(g: int, n: int = 0) -> TautClass:
    """Hodge class expression ``(-1)^g`` times the cycle for the zero vector."""
    if 2 * g - 2 + n <= 0:
        raise ValueError(f"no stable curves of type ({g}, {n})")
    return dr_cycle(DRVector(g, (0,) * n)).scale(Fraction((-1) ** g))


# -- closed-form oracles ----------------------------------------------


def genus0_closed(A: Sequence[int], d: int) -> TautClass:
    """Genus-0 degree-d class by the direct tree sum.

    Trees have a unique weighting: an edge splitting the markings into
    ``I | I^c`` carries residues ``-+ a_I mod r``, so its edge series has
    the closed coefficients ``-(a_I^2)^{m+1}/(m+1)!`` with no r anywhere.
    No weighting enumeration or interpolation is involved.
    """
    A = tuple(int(a) for a in A)
    n = len(A)
    if n < 3:
        raise ValueError("genus 0 needs at least three markings")
    if sum(A) != 0:
        raise ValueError("parts must sum to zero")
    acc: list = []
    for graph in enumerate_stable_graphs(0, n, max_edges=d):
        cap = d - graph.n_edges
        series = _leg_vertex_series(graph, DRVector(0, A), cap)
        for t in range(graph.n_edges):
            side = graph.edge_side_markings(t)
            a_I = sum(A[i - 1] for i in side)
            factor = {}
            for m in range(cap + 1):
                coeff = Fraction(-((a_I * a_I) ** (m + 1)), factorial(m + 1))
                if coeff == 0:
                    continue
                for i in range(m + 1):
                    mono = psi_edge_monomial(graph, t, i, m - i)
                    factor[mono] = coeff * Fraction(
                        factorial(m), factorial(i) * factorial(m - i)
                    )
            series = series_mul(series, factor, cap)
        template = series_degree_part(series, cap)
        _emit(acc, graph, template, Fraction(1))
    return TautClass(0, n, acc)


def genus1_closed(A: Sequence[int]) -> TautClass:
    """Genus-1 degree-1 class in divisor form.

    ``sum a_i^2 psi_i - sum_{|I| >= 2} a_I^2 delta_I - (1/6) delta_0``
    with ``a_I`` the sum over the rational-tail markings ``I``.
    """
    A = tuple(int(a) for a in A)
    n = len(A)
    if n < 1:
        raise ValueError("genus 1 needs at least one marking")
    if sum(A) != 0:
        raise ValueError("parts must sum to zero")
    out = TautClass(1, n)
    base = StableGraph([1], [], [0] * n)
    for i, a in enumerate(A):
        if a != 0:
            dg = DecoratedGraph(base, tuple(1 if j == i else 0 for j in range(n)))
            out = out + TautClass(1, n, [(dg, Fraction(a * a))])
    for size in range(2, n + 1):
        for I in itertools.combinations(range(1, n + 1), size):
            a_I = sum(A[i - 1] for i in I)
            if a_I != 0:
                out = out - delta_I(n, I).scale(Fraction(a_I * a_I))
    out = out - delta0(n).scale(Fraction(1, 6))
    return out
