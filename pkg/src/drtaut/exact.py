"""Exact rational arithmetic helpers: Bernoulli data and polynomial interpolation.

Everything in this package is computed over the rationals, with
:class:`fractions.Fraction` as the single scalar type.  This module collects
the small amount of numerical machinery the rest of the library relies on:

* Bernoulli numbers ``B_m`` in the convention with ``B_1 = -1/2`` (the
  generating function ``t e^{xt} / (e^t - 1)``).
* Bernoulli polynomials ``B_m(x)``.
* Exact Lagrange interpolation through rational sample points, producing an
  :class:`RPoly`.  The values may be :class:`fractions.Fraction` scalars or
  any vector-space-like objects supporting ``+`` and left multiplication by
  ``Fraction`` (graph-sum classes use this to fit whole classes at once).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Sequence

__all__ = [
    "Rational",
    "rat_from_str",
    "rat_to_str",
    "bernoulli_number",
    "bernoulli_poly",
    "RPoly",
    "interpolate",
]

Rational = Fraction


def rat_from_str(s: str) -> Fraction:
    """Parse ``"p/q"`` or ``"n"`` into an exact rational."""
    return Fraction(s.strip())


def rat_to_str(x: Fraction) -> str:
    """Format a rational as ``"p/q"``, or ``"n"`` when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


@lru_cache(maxsize=None)
def bernoulli_number(m: int) -> Fraction:
    """Return the Bernoulli number ``B_m`` (convention ``B_1 = -1/2``).

    Computed by the defining recurrence ``sum_{j<=m} C(m+1, j) B_j = 0``
    with ``B_0 = 1``; all odd ``B_m`` vanish for ``m >= 3``.
    """
    if m < 0:
        raise ValueError("Bernoulli numbers are indexed by m >= 0")
    if m == 0:
        return Fraction(1)
    if m % 2 == 1 and m > 1:
        return Fraction(0)
    total = Fraction(0)
    for j in range(m):
        total += comb(m + 1, j) * bernoulli_number(j)
    return -total / (m + 1)


def bernoulli_poly(m: int, x: Fraction) -> Fraction:
    """Evaluate the Bernoulli polynomial ``B_m(x)`` at a rational point.

    ``B_m(x) = sum_j C(m, j) B_j x^{m-j}``; for example ``B_2(x)`` is
    ``x^2 - x + 1/6``.
    """
    if m < 0:
        raise ValueError("Bernoulli polynomials are indexed by m >= 0")
    x = Fraction(x)
    total = Fraction(0)
    for j in range(m + 1):
        total += comb(m, j) * bernoulli_number(j) * x ** (m - j)
    return total


class RPoly:
    """A polynomial in one variable ``r`` with exact coefficients.

    Coefficients are stored low degree first.  They are normally rationals,
    but any values supporting addition and ``Fraction`` scaling work; the
    fitting pipeline uses this with graph-sum classes as coefficients.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Sequence):
        cs = list(coeffs)
        while len(cs) > 1 and _is_zero(cs[-1]):
            cs.pop()
        if not cs:
            cs = [Fraction(0)]
        self.coeffs = tuple(cs)

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and _is_zero(self.coeffs[0]):
            return -1
        return len(self.coeffs) - 1

    def __call__(self, r):
        """Evaluate at ``r`` by Horner's rule."""
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else _scale(acc, Fraction(r)) + c
        return acc

    def coefficient(self, j: int):
        if j < len(self.coeffs):
            return self.coeffs[j]
        return Fraction(0) * self.coeffs[0]

    @property
    def constant_term(self):
        return self.coeffs[0]

    def divisible_by(self, b: int) -> bool:
        """True when ``r^b`` divides this polynomial."""
        return all(_is_zero(c) for c in self.coeffs[:b])

    def shift_down(self, b: int) -> "RPoly":
        """Divide by ``r^b``; requires the first ``b`` coefficients to vanish."""
        if b == 0:
            return self
        if not self.divisible_by(b):
            raise ValueError(f"polynomial is not divisible by r^{b}")
        if len(self.coeffs) <= b:
            return RPoly([Fraction(0)])
        return RPoly(self.coeffs[b:])

    def __eq__(self, other) -> bool:
        if not isinstance(other, RPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RPoly({list(self.coeffs)!r})"

    def pretty(self) -> str:
        if self.degree < 0:
            return "0"
        parts = []
        for j, c in enumerate(self.coeffs):
            if _is_zero(c):
                continue
            if j == 0:
                parts.append(rat_to_str(c))
            elif j == 1:
                parts.append(f"{rat_to_str(c)}*r")
            else:
                parts.append(f"{rat_to_str(c)}*r^{j}")
        return " + ".join(parts)


def _is_zero(value) -> bool:
    if isinstance(value, (int, Fraction)):
        return value == 0
    probe = getattr(value, "is_zero", None)
    if probe is not None:
        return probe() if callable(probe) else bool(probe)
    return value == 0


def _scale(value, c: Fraction):
    return c * value if not isinstance(value, (int, Fraction)) else Fraction(value) * c


def interpolate(samples: Sequence[tuple]) -> RPoly:
    """Exact Lagrange interpolation through ``(node, value)`` samples.

    Nodes must be distinct rationals; a repeated node raises ``ValueError``.
    Values may be rationals or class-like objects with ``+`` and rational
    scaling.  For instance the samples ``(5, 4), (6, 35/6), (7, 8)`` fit the
    polynomial ``(r^2 - 1)/6``.
    """
    pts = [(Fraction(x), y) for x, y in samples]
    if not pts:
        raise ValueError("interpolation needs at least one sample")
    nodes = [x for x, _ in pts]
    if len(set(nodes)) != len(nodes):
        raise ValueError("interpolation nodes must be distinct")

    n = len(pts)
    coeff_acc: list = [None] * n
    for i, (xi, yi) in enumerate(pts):
        # Numerator prod_{j != i} (X - x_j), built by convolution.
        num = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(nodes):
            if j == i:
                continue
            denom *= xi - xj
            nxt = [Fraction(0)] * (len(num) + 1)
            for t, c in enumerate(num):
                nxt[t] += c * (-xj)
                nxt[t + 1] += c
            num = nxt
        for t, c in enumerate(num):
            w = c / denom
            piece = _scale(yi, w)
            coeff_acc[t] = piece if coeff_acc[t] is None else coeff_acc[t] + piece
    return RPoly(coeff_acc)
