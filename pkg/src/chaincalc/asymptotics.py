"""Growth constants and bound machinery for repeated-copy chain families.

Concatenating N flipped copies of a base chain convexly (a "poly" chain),
or joining two such chains over a middle edge (a "twin" chain), produces
families whose triangulation counts grow like lambda**n and tau**n per
chain edge.  Both constants are plain weighted sums over the base chain's
triangulation coefficients and are computed here, together with the
entropy maximum behind them, the generating function that multiplies
(up to (1-x)/(1-2x)) under convex sums, and explicit upper/lower bounds
for chains assembled from copies of one base chain.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .extnum import ExtNum
from .formula import Formula, FormulaError, flip, gdc, poly
from .tripoly import Number, counts, resolve_mode, tri_poly


@dataclass(frozen=True)
class GrowthReport:
    """Per-edge growth constants of the poly/twin families over one base chain.

    ``lam`` governs upper triangulations of poly chains, ``tau`` of twin
    chains; a twin chain has lam*tau complete triangulations per edge.
    ``lam_bar`` is ``lam`` of the flipped base chain; ``lam * lam_bar``
    bounds any chain built from copies of the base.  The ``*_power`` fields
    hold the exact m-th powers (integers in exact mode).
    """

    m: int
    lam: float
    tau: float
    lam_tau: float
    lam_bar: float
    lam_lam_bar: float
    lam_power: Number
    tau_power: Number
    lam_bar_power: Number


def _weighted_sum(coeffs, m: int, weights, mode: str) -> Number:
    # sum_{k=1..m} weights(k) * t_{m-k}, accumulated in ascending k.
    if mode == "exact":
        return sum(weights(k) * coeffs[m - k] for k in range(1, m + 1))
    acc = ExtNum(0, 0)
    for k in range(1, m + 1):
        acc = acc + ExtNum.from_int(weights(k)) * coeffs[m - k]
    return acc


def _root(value: Number, m: int) -> float:
    if isinstance(value, int):
        return ExtNum.from_int(value).nth_root(m)
    return value.nth_root(m)


def lambda_tau(base: Formula, mode: str | None = None) -> GrowthReport:
    """Growth constants of the poly and twin families built on ``base``."""
    mode = resolve_mode(mode, base.n)
    pair = tri_poly(base, mode)
    own = pair.T.coeffs()
    flipped = pair.Tflip.coeffs()
    m = base.n
    lam_power = _weighted_sum(flipped, m, lambda k: (k + 1) << k, mode)
    tau_power = _weighted_sum(own, m, lambda k: 1 << k, mode)
    lam_bar_power = _weighted_sum(own, m, lambda k: (k + 1) << k, mode)
    lam = _root(lam_power, m)
    tau = _root(tau_power, m)
    lam_bar = _root(lam_bar_power, m)
    return GrowthReport(
        m=m, lam=lam, tau=tau, lam_tau=lam * tau, lam_bar=lam_bar,
        lam_lam_bar=lam * lam_bar, lam_power=lam_power,
        tau_power=tau_power, lam_bar_power=lam_bar_power)


def entropy_max(weights: Sequence[float]):
    """Maximum of exp(entropy) * prod(u_k**a_k) over the simplex.

    The maximum equals sum(u) and is attained at a_k proportional to u_k.
    """
    if not weights or any(u < 0 for u in weights):
        raise ValueError("weights must be nonnegative")
    total = sum(weights)
    if total == 0:
        raise ValueError("at least one weight must be positive")
    return total, tuple(u / total for u in weights)


# ---------------------------------------------------------------------------
# Truncated power series over exact rationals
# ---------------------------------------------------------------------------

class PowerSeries:
    """Formal power series truncated at a fixed order, exact coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs, order: int | None = None):
        vals = [Fraction(c) for c in coeffs]
        if order is None:
            order = len(vals) - 1
        if order < 0:
            raise ValueError("order must be nonnegative")
        vals = vals[:order + 1]
        vals += [Fraction(0)] * (order + 1 - len(vals))
        self.order = order
        self.coeffs = vals

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([], order)

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([1], order)

    @classmethod
    def geometric_ratio_pow(cls, power: int, order: int) -> "PowerSeries":
        """(x/(1-x))**power, truncated."""
        if power < 0:
            raise ValueError("power must be nonnegative")
        coeffs = [Fraction(0)] * (order + 1)
        for j in range(power, order + 1):
            coeffs[j] = Fraction(math.comb(j - 1, power - 1)) if power else 0
        if power == 0:
            coeffs[0] = Fraction(1)
        return cls(coeffs, order)

    def _coerce(self, other):
        if not isinstance(other, PowerSeries):
            other = PowerSeries([other], self.order)
        return min(self.order, other.order), other

    def __add__(self, other):
        order, other = self._coerce(other)
        return PowerSeries(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], order)

    def __sub__(self, other):
        order, other = self._coerce(other)
        return PowerSeries(
            [a - b for a, b in zip(self.coeffs, other.coeffs)], order)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PowerSeries([c * other for c in self.coeffs], self.order)
        order = min(self.order, other.order)
        out = [Fraction(0)] * (order + 1)
        for i, a in enumerate(self.coeffs[:order + 1]):
            if a:
                for j in range(order + 1 - i):
                    b = other.coeffs[j]
                    if b:
                        out[i + j] += a * b
        return PowerSeries(out, order)

    __rmul__ = __mul__

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, min(order, self.order))

    def __eq__(self, other):
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        return f"PowerSeries({self.coeffs})"


def phi_series(f: Formula, order: int) -> PowerSeries:
    """Truncated expansion of T(x) - (x/(1-x))**(n+1) * T(1-x).

    The first n+1 coefficients coincide with the triangulation polynomial;
    under convex sums this series is multiplicative up to a factor
    (1-x)/(1-2x).
    """
    n = f.n
    if order < n:
        raise ValueError(f"order must be at least n = {n}")
    t = tri_poly(f, "exact").T.coeffs()
    own = PowerSeries([Fraction(c) for c in t], order)

    # T(1-x) truncated: accumulate t_k * (1-x)^k.
    shifted = [Fraction(0)] * (order + 1)
    for k, tk in enumerate(t):
        if tk:
            for i in range(min(k, order) + 1):
                term = Fraction(math.comb(k, i) * tk)
                shifted[i] += -term if i % 2 else term
    tail = PowerSeries.geometric_ratio_pow(n + 1, order) * PowerSeries(shifted, order)
    return own - tail


def phi_prefactor(order: int) -> PowerSeries:
    """(1-x)/(1-2x) truncated: 1 + x + 2x^2 + 4x^3 + ..."""
    coeffs = [Fraction(1)] + [Fraction(1 << (j - 1)) for j in range(1, order + 1)]
    return PowerSeries(coeffs, order)


# ---------------------------------------------------------------------------
# Bounds
# ---------------------------------------------------------------------------

def gdc_upper_bound(copy_counts: Sequence[int]) -> ExtNum:
    """Closed-form upper bound on the upper-triangulation count of a
    generalized double circle: prod_k (2^k (k+1))^{N_k}, rounded once."""
    if not copy_counts or any(c < 0 for c in copy_counts) \
            or all(c == 0 for c in copy_counts):
        raise ValueError("need nonnegative counts, at least one positive")
    product = 1
    for k, c in enumerate(copy_counts, start=1):
        if c:
            product *= ((k + 1) << k) ** c
    return ExtNum.from_int(product)


@dataclass(frozen=True)
class CopyBounds:
    """Exact sandwich bounds for a chain built from N copies of a base."""

    lower_u: int
    upper_u: int
    lower_tr: int
    upper_tr: int


def copy_bounds(base: Formula, n_copies: int, chain: Formula) -> CopyBounds:
    """Bounds on U(chain) and tr(chain) when ``chain`` is any formula using
    exactly ``n_copies`` copies of ``base``.

    The all-concave and all-convex arrangements are extremal, so U is
    sandwiched between U(base)**N and the poly chain of the flipped base;
    applying the same argument to the flip bounds the full count.
    """
    if chain.n != n_copies * base.n:
        raise FormulaError(
            f"chain has {chain.n} edges, need {n_copies} x {base.n}")
    base_counts = counts(base, "exact")
    u_poly_of_flip = counts(poly(flip(base), n_copies), "exact").U
    u_poly_of_base = counts(poly(base, n_copies), "exact").U
    return CopyBounds(
        lower_u=base_counts.U ** n_copies,
        upper_u=u_poly_of_flip,
        lower_tr=base_counts.tr ** n_copies,
        upper_tr=u_poly_of_base * u_poly_of_flip,
    )


def gdc_exact_upper_count(copy_counts: Sequence[int]) -> int:
    """Exact U of the generalized double circle, for bound comparisons."""
    return counts(gdc(*copy_counts), "exact").U
