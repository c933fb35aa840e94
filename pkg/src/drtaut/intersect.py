"""Numeric pairing engine for formal tautological classes.

This module turns the formal decorated-graph sums of :mod:`drtaut.tautclass`
into rational numbers by integrating against monomials in the cotangent
classes at the markings.  The ingredients are classical:

* psi-class intersection numbers (Witten correlators) on the moduli of
  stable curves, computed by the KdV / Virasoro recursion of
  Dijkgraaf-Verlinde-Verlinde from the two seed values
  ``<tau_0^3>_0 = 1`` and ``<tau_1>_1 = 1/24``;
* reduction of kappa decorations to psi classes at extra markings via the
  forgetful pushforward relation ``kappa_b = pi_*(psi^{b+1})``;
* Faber's socle formula for the Hodge pairings
  ``int psi_1^p psi_2^q lambda_g lambda_{g-1}`` on the two-pointed space,
  which lets the lambda-class applications be evaluated without ever
  representing a lambda class as a graph sum.

A pairing such as :func:`pair_with_psi` treats each decorated graph as the
pushforward of a product of vertex moduli: every half-edge (edge end or
marking) is a marked point of its vertex space, the integral factors over
vertices, and no automorphism corrections are applied beyond those already
stored in the class coefficients.

The higher-level verification routines (:func:`vanishing_probe`,
:func:`hodge_triple`, :func:`dr_ab_integral`, :func:`psi_sum_lambda`)
each compute a quantity by two independent routes and raise
``ArithmeticError`` if the routes disagree, so a passing call is itself a
consistency proof.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import factorial
from typing import Iterable, Sequence

from .exact import Rational, bernoulli_number, interpolate
from .pixton import pixton_class
from .tautclass import DecoratedGraph, TautClass
from .weightings import DRVector

__all__ = [
    "double_factorial",
    "witten_correlator",
    "integrate_vertex",
    "pair_with_psi",
    "complementary_psi_monomials",
    "vanishing_probe",
    "socle_integral",
    "psi_sum_lambda",
    "hodge_triple",
    "dr_ab_integral",
]


def double_factorial(j: int) -> int:
    """(j)!! for odd j >= -1, with (-1)!! = 1."""
    if j < -1 or j % 2 == 0:
        raise ValueError(f"odd argument >= -1 required, got {j}")
    out = 1
    while j > 1:
        out *= j
        j -= 2
    return out


# -- Witten correlators -----------------------------------------------
#
# <tau_{d_1} ... tau_{d_n}>_g = int_{Mbar_{g,n}} psi_1^{d_1} ... psi_n^{d_n}
# is nonzero only when sum d_i = 3g - 3 + n.  The recursion removes one
# insertion tau_{k+1} of positive index:
#
#   (2k+3)!! <tau_{k+1} prod_j tau_{d_j}>_g
#     = sum_j ((2(k+d_j)+1)!! / (2d_j-1)!!) <tau_{k+d_j} prod_{i!=j}>_g
#     + 1/2 sum_{a+b=k-1} (2a+1)!! (2b+1)!! (
#           <tau_a tau_b prod_j>_{g-1}
#         + sum over genus splits and ordered marking splits of
#           <tau_a ...>_{g'} <tau_b ...>_{g''} )
#
# together with the string equation, this determines every correlator
# from the two seeds.


@lru_cache(maxsize=None)
def _correlator(g: int, ds: tuple[int, ...]) -> Fraction:
    n = len(ds)
    if g < 0 or 2 * g - 2 + n <= 0:
        return Fraction(0)
    if sum(ds) != 3 * g - 3 + n:
        return Fraction(0)
    if g == 0 and n == 3:
        return Fraction(1)
    if g == 1 and n == 1:
        return Fraction(1, 24)
    # ds is sorted ascending, so the last entry is the largest; the
    # dimension constraint forces it to be positive here.
    k = ds[-1] - 1
    rest = ds[:-1]
    total = Fraction(0)
    for j, dj in enumerate(rest):
        shifted = tuple(sorted(rest[:j] + rest[j + 1 :] + (k + dj,)))
        total += Fraction(
            double_factorial(2 * (k + dj) + 1), double_factorial(2 * dj - 1)
        ) * _correlator(g, shifted)
    for a in range(k):
        b = k - 1 - a
        w = Fraction(double_factorial(2 * a + 1) * double_factorial(2 * b + 1), 2)
        total += w * _correlator(g - 1, tuple(sorted(rest + (a, b))))
        for g1 in range(g + 1):
            for m in range(len(rest) + 1):
                for picked in combinations(range(len(rest)), m):
                    chosen = set(picked)
                    left = tuple(sorted([rest[i] for i in picked] + [a]))
                    right = tuple(
                        sorted(
                            [rest[i] for i in range(len(rest)) if i not in chosen]
                            + [b]
                        )
                    )
                    total += w * _correlator(g1, left) * _correlator(g - g1, right)
    return total / double_factorial(2 * k + 3)


def witten_correlator(g: int, exponents: Iterable[int]) -> Fraction:
    """The psi intersection number <tau_{d_1} ... tau_{d_n}>_g.

    Returns 0 when the exponents miss the dimension 3g - 3 + n or the
    pair (g, n) is unstable.
    """
    ds = tuple(int(d) for d in exponents)
    if any(d < 0 for d in ds):
        raise ValueError("psi exponents must be non-negative")
    if g < 0:
        raise ValueError("genus must be non-negative")
    return _correlator(g, tuple(sorted(ds)))


# -- kappa reduction --------------------------------------------------
#
# Pushing forward along the map forgetting one extra marking turns a
# kappa_b factor into psi^{b+1} at the new point, at the price of
# correction terms: pulled back, kappa_b becomes kappa_b - psi^b at the
# extra point.  Peeling one kappa factor at a time gives
#
#   int prod psi^p . kappa_{b_1} ... kappa_{b_m}
#     = sum_{S subset {1..m-1}} (-1)^{|S|}
#       int_{n+1} prod psi^p . psi_{n+1}^{b_m + 1 + sum_{j in S} b_j}
#                 prod_{j not in S} kappa_{b_j}
#
# which terminates in pure correlators.


@lru_cache(maxsize=None)
def _vertex_integral(g: int, psis: tuple[int, ...], kappas: tuple[int, ...]) -> Fraction:
    n = len(psis)
    if sum(psis) + sum(kappas) != 3 * g - 3 + n:
        return Fraction(0)
    if not kappas:
        return _correlator(g, psis)
    peeled = kappas[-1]
    rest = kappas[:-1]
    total = Fraction(0)
    for m in range(len(rest) + 1):
        for picked in combinations(range(len(rest)), m):
            chosen = set(picked)
            exponent = peeled + 1 + sum(rest[i] for i in picked)
            kept = tuple(rest[i] for i in range(len(rest)) if i not in chosen)
            total += Fraction((-1) ** m) * _vertex_integral(
                g, tuple(sorted(psis + (exponent,))), kept
            )
    return total


def integrate_vertex(
    g: int,
    n: int,
    psi_exponents: Sequence[int],
    kappa_indices: Iterable[int] = (),
) -> Fraction:
    """int_{Mbar_{g,n}} psi_1^{p_1} ... psi_n^{p_n} kappa_{b_1} ... kappa_{b_m}.

    Zero when the total degree misses dim Mbar_{g,n} = 3g - 3 + n.
    """
    ps = tuple(int(p) for p in psi_exponents)
    ks = tuple(sorted(int(b) for b in kappa_indices))
    if len(ps) != n:
        raise ValueError(f"expected {n} psi exponents, got {len(ps)}")
    if any(p < 0 for p in ps):
        raise ValueError("psi exponents must be non-negative")
    if any(b < 1 for b in ks):
        raise ValueError("kappa indices must be >= 1")
    if g < 0 or 2 * g - 2 + n <= 0:
        raise ValueError(f"unstable moduli space ({g}, {n})")
    return _vertex_integral(g, tuple(sorted(ps)), ks)


# -- pairing decorated-graph classes against psi monomials ------------


def _term_integral(dec: DecoratedGraph, exponents: Sequence[int]) -> Fraction:
    graph = dec.graph
    psi = dec.psi_by_half_edge()
    value = Fraction(1)
    for v in range(graph.n_vertices):
        vertex_exps = []
        for h in graph.vertex_half_edges(v):
            e = psi.get(h, 0)
            if graph.is_leg(h):
                e += exponents[graph.marking_of(h) - 1]
            vertex_exps.append(e)
        value *= _vertex_integral(
            graph.genera[v], tuple(sorted(vertex_exps)), dec.kappa[v]
        )
        if not value:
            return Fraction(0)
    return value


def pair_with_psi(T: TautClass, exponents: Sequence[int] = ()) -> Fraction:
    """Integrate a formal class against prod_i psi_i^{b_i} over Mbar_{g,n}.

    Each decorated graph is integrated over the product of its vertex
    moduli: a psi class at marking i restricts to the psi class at the
    corresponding point of its vertex, decorations stay where they are,
    and the coefficients of ``T`` already carry all automorphism and
    pushforward normalization.  The result is exact.
    """
    exps = tuple(int(b) for b in exponents)
    if len(exps) != T.n:
        raise ValueError(f"expected {T.n} psi exponents, got {len(exps)}")
    if any(b < 0 for b in exps):
        raise ValueError("psi exponents must be non-negative")
    total = Fraction(0)
    for dec, coeff in T.items():
        total += coeff * _term_integral(dec, exps)
    return total


def complementary_psi_monomials(g: int, n: int, d: int) -> list[tuple[int, ...]]:
    """All psi exponent tuples of total degree 3g - 3 + n - d, or [] if negative."""
    remaining = 3 * g - 3 + n - d
    if remaining < 0:
        return []

    def spread(total: int, slots: int) -> list[tuple[int, ...]]:
        if slots == 0:
            return [()] if total == 0 else []
        return [
            (lead,) + tail
            for lead in range(total, -1, -1)
            for tail in spread(total - lead, slots - 1)
        ]

    return spread(remaining, n)


def vanishing_probe(
    dr: DRVector,
    d: int,
    exponent_sets: Iterable[Sequence[int]] | None = None,
) -> list[Fraction]:
    """Pair the degree-d class against complementary psi monomials.

    For degree d above the genus the class vanishes, so every returned
    pairing must be the exact rational zero.  The probe computes the
    pairings; asserting them zero is the caller's (or the test suite's)
    job, keeping failures visible.
    """
    if d <= dr.genus:
        raise ValueError(f"probe needs degree above the genus, got d={d} <= g={dr.genus}")
    cls = pixton_class(dr, d)
    if exponent_sets is None:
        sets = complementary_psi_monomials(dr.genus, dr.n, d)
    else:
        sets = [tuple(int(b) for b in s) for s in exponent_sets]
    return [pair_with_psi(cls, s) for s in sets]


# -- Hodge pairings via the socle formula -----------------------------


def socle_integral(g: int, p: int, q: int) -> Fraction:
    """int_{Mbar_{g,2}} psi_1^p psi_2^q lambda_g lambda_{g-1} for p + q = g.

    Faber's socle formula:
        (-1)^{g+1} B_{2g} / (2^{2g} g (2p-1)!! (2q-1)!!).
    Valid for g >= 1 including p or q equal to zero.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    if p < 0 or q < 0 or p + q != g:
        raise ValueError(f"need p + q = {g} with p, q >= 0, got ({p}, {q})")
    sign = Fraction((-1) ** (g + 1))
    return (
        sign
        * bernoulli_number(2 * g)
        / (2 ** (2 * g) * g * double_factorial(2 * p - 1) * double_factorial(2 * q - 1))
    )


def psi_sum_lambda(g: int) -> Fraction:
    """int_{Mbar_{g,2}} (psi_1 + psi_2)^g lambda_g lambda_{g-1}, two ways.

    Route (a) expands the binomial and sums socle integrals; route (b) is
    the closed form (-1)^{g+1} (B_{2g} / 2g) / (2g-1)!!.  The binomial
    route passes through the Pascal-triangle identity
        sum_{p+q=g} 1 / (p! (2p-1)!! q! (2q-1)!!) = 2^{3g-1} / (2g)!
    which is asserted along the way.  ArithmeticError on any mismatch.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    binomial_route = Fraction(0)
    pascal_sum = Fraction(0)
    for p in range(g + 1):
        q = g - p
        binomial_route += Fraction(
            factorial(g), factorial(p) * factorial(q)
        ) * socle_integral(g, p, q)
        pascal_sum += Fraction(
            1,
            factorial(p)
            * double_factorial(2 * p - 1)
            * factorial(q)
            * double_factorial(2 * q - 1),
        )
    if pascal_sum != Fraction(2 ** (3 * g - 1), factorial(2 * g)):
        raise ArithmeticError(
            f"even binomial identity failed at g={g}: {pascal_sum}"
        )
    closed_route = (
        Fraction((-1) ** (g + 1))
        * bernoulli_number(2 * g)
        / (2 * g)
        / double_factorial(2 * g - 1)
    )
    if binomial_route != closed_route:
        raise ArithmeticError(
            f"psi-sum routes disagree at g={g}: {binomial_route} vs {closed_route}"
        )
    return closed_route


def _power_sum_linear_coefficient(m: int) -> Fraction:
    """Coefficient of r in the polynomial r -> sum_{a=0}^{r-1} a^m.

    Extracted by exact interpolation of the power sum, the same fitting
    machinery used for the weighting sums; it equals B_m.
    """
    samples = []
    total = 0
    for r in range(1, m + 3):
        total += (r - 1) ** m
        samples.append((Fraction(r), Fraction(total)))
    poly = interpolate(samples)
    return poly.shift_down(1).constant_term


def hodge_triple(g: int) -> Fraction:
    """int over Mbar_{g+1} of lambda_{g+1} lambda_g lambda_{g-1}, two ways.

    Route (a): the closed form
        -(1/2) (1/(2g)!) (B_{2g}/2g) (B_{2g+2}/(2g+2)).
    Route (b): the one-loop graph evaluation: the r-free part of
    (1/2r) sum_{a<r} a^{2g+2} / (2^{g+1} (g+1)!) times the psi-sum
    pairing, with the Bernoulli number B_{2g+2} extracted from the power
    sum by interpolation.  ArithmeticError on mismatch.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    closed = (
        Fraction(-1, 2)
        / factorial(2 * g)
        * bernoulli_number(2 * g)
        / (2 * g)
        * bernoulli_number(2 * g + 2)
        / (2 * g + 2)
    )
    extracted = _power_sum_linear_coefficient(2 * g + 2)
    graph_route = (
        Fraction((-1) ** g)
        * (extracted / 2)
        / (2 ** (g + 1) * factorial(g + 1))
        * psi_sum_lambda(g)
    )
    if graph_route != closed:
        raise ArithmeticError(
            f"triple-product routes disagree at g={g}: {graph_route} vs {closed}"
        )
    return closed


def dr_ab_integral(g: int, a: int) -> Fraction:
    """lambda_g lambda_{g-1} paired against the cycle for (a, -a), two ways.

    Route (a): the closed form (-1)^{g+1} a^{2g}/(2g)! . B_{2g}/2g.
    Route (b): only the smooth one-vertex term survives against
    lambda_g lambda_{g-1}; its edge-free contribution is
    a^{2g} / (2^g g!) times the psi-sum pairing.  ArithmeticError on
    mismatch.
    """
    if g < 1:
        raise ValueError("genus must be at least 1")
    closed = (
        Fraction((-1) ** (g + 1))
        * Fraction(a ** (2 * g), factorial(2 * g))
        * bernoulli_number(2 * g)
        / (2 * g)
    )
    vertex_route = Fraction(a ** (2 * g), 2**g * factorial(g)) * psi_sum_lambda(g)
    if vertex_route != closed:
        raise ArithmeticError(
            f"cycle-pairing routes disagree at (g={g}, a={a}): "
            f"{vertex_route} vs {closed}"
        )
    return closed
