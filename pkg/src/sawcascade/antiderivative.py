"""Layerwise antiderivatives, certified integrals, and the integral gap.

Each layer of the cascade has an exact running integral from -1: layer 0
(the identity map) integrates to (x^2 - 1)/2, and the running integral of a
deeper layer restricted to a tooth is the previous layer's running integral,
composed with the base map and divided by the tooth's slope.  The division
is legitimate because every complete tooth to the left carries zero net
area, so only the tooth containing x contributes; both conventions agree at
tooth endpoints since every layer's running integral vanishes at +-1.

Summing layers k = 1..K with weights 2^-k gives the running integral of the
truncated series exactly; the dropped tail integrates to at most 2^-K over
an interval of length at most 2, which is the certified radius 2^(1-K).

``enclose_integral`` is the independent oracle: it never uses the recursion
above, only cell geometry (exact trapezoids on cells, plus a rigorous charge
of +-1 per unit of length not covered by the enumerated cells).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from sawcascade.cells import cell, level1_cell, level1_ids_at, locate
from sawcascade.construction import (
    Certified,
    DomainError,
    Rat,
    RatLike,
    as_rational,
    eval_f1,
    partial_sum,
    require_unit_interval,
)
from sawcascade.reports import WitnessReport, check, make_report

ZERO = Fraction(0)


@dataclass(frozen=True)
class Enclosure:
    """Closed interval [lower, upper] with exact rational endpoints."""

    lower: Rat
    upper: Rat

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(f"empty enclosure [{self.lower}, {self.upper}]")

    @property
    def width(self) -> Rat:
        return self.upper - self.lower

    @property
    def midpoint(self) -> Rat:
        return (self.lower + self.upper) / 2

    def contains(self, value: RatLike) -> bool:
        v = as_rational(value)
        return self.lower <= v <= self.upper


# ---------------------------------------------------------------------------
# layer antiderivatives
# ---------------------------------------------------------------------------


def eval_F0(x: RatLike) -> Rat:
    """Running integral of the identity layer from -1: (x^2 - 1)/2."""
    x = require_unit_interval(as_rational(x))
    return (x * x - 1) / 2


def eval_Fk(x: RatLike, k: int) -> Rat:
    """Exact running integral from -1 of layer k at x (k >= 0).

    Recursion: value at x is the layer-(k-1) running integral at the base
    map's value, divided by the slope of the tooth containing x; +-1 map to
    0.  At a shared tooth endpoint both teeth give the same value because
    the inner running integral vanishes at +-1.
    """
    x = require_unit_interval(as_rational(x))
    if k < 0:
        raise DomainError(f"layer index must be >= 0, got {k}")
    if k == 0:
        return eval_F0(x)
    if abs(x) == 1:
        return ZERO
    tooth = level1_cell(level1_ids_at(x)[0])
    return eval_Fk(eval_f1(x), k - 1) / tooth.slope


# ---------------------------------------------------------------------------
# independent certified integral oracle
# ---------------------------------------------------------------------------


def covered_length(k: int, index_budget: int) -> Rat:
    """Exact total length of all level-k cells with coordinates <= budget.

    Level 1 with ids |j| <= B covers 2(1 - 1/(B+2)) of [-1, 1]; each deeper
    coordinate multiplies the covered fraction by the same factor, because a
    cell's child fan covers that fraction of the cell.  Telescoping gives
    2 * (1 - 1/(B+2))^k with no enumeration.
    """
    if k < 1:
        raise DomainError(f"level k must be >= 1, got {k}")
    if index_budget < 0:
        raise DomainError(f"index budget must be >= 0, got {index_budget}")
    factor = 1 - Fraction(1, index_budget + 2)
    return 2 * factor**k


def enclose_integral(k: int, upto: RatLike, index_budget: int) -> Enclosure:
    """Certified enclosure of the integral of layer k over [-1, upto].

    Built purely from cell geometry: the layer is affine on each level-k
    cell with endpoint values -1 and +1, so every complete cell contributes
    a trapezoid of exactly zero and only the clipped cell containing
    ``upto`` contributes a nonzero trapezoid.  Length not covered by cells
    within the index budget is charged +-1 (the layer's exact sup bound),
    capped by the window length.  Wider budgets only shrink the enclosure.
    """
    upto = require_unit_interval(as_rational(upto), "upto")
    gap = 2 - covered_length(k, index_budget)
    gap = min(gap, upto + 1)
    trapezoid = ZERO
    if upto > -1:
        for address in locate(upto, k)[:1]:
            if all(abs(j) <= index_budget for j in address):
                c = cell(address)
                trapezoid = (
                    (c.value_at(c.lo) + c.value_at(upto)) / 2 * (upto - c.lo)
                )
    return Enclosure(trapezoid - gap, trapezoid + gap)


# ---------------------------------------------------------------------------
# series antiderivative
# ---------------------------------------------------------------------------


def eval_F(x: RatLike, K: int) -> Certified:
    """Certified running integral from -1 of the full series at x.

    Center: exact sum of the first K weighted layer integrals.  Radius:
    the dropped layers have sup at most 2^-K in total, integrated over a
    window of length at most 2, hence 2^(1-K).
    """
    x = require_unit_interval(as_rational(x))
    if K < 1:
        raise DomainError(f"truncation K must be >= 1, got {K}")
    center = sum(
        (eval_Fk(x, k) / Fraction(2**k) for k in range(1, K + 1)), ZERO
    )
    return Certified(center, Fraction(2, 2**K))


def normalization_center(K: int) -> Rat:
    """Exact K-term value at the origin: -(1/6)(1 - 4^-K).

    Layer k's running integral at 0 is -2^-(k+1); weighting by 2^-k and
    summing the geometric series over k = 1..K gives the closed form.
    """
    if K < 1:
        raise DomainError(f"truncation K must be >= 1, got {K}")
    return -Fraction(1, 6) * (1 - Fraction(1, 4**K))


def eval_G(x: RatLike, K: int) -> Certified:
    """Certified antiderivative of the signed series, anchored at 0.

    For x > 0 this is the running integral minus its value at 0; the signed
    series is even, so its antiderivative is odd and the x < 0 branch is the
    reflection.  Exactly 0 at x = 0.  Radius doubles: both the running
    integral and the anchor carry a 2^(1-K) tail.
    """
    x = require_unit_interval(as_rational(x))
    if K < 1:
        raise DomainError(f"truncation K must be >= 1, got {K}")
    if x == 0:
        return Certified(ZERO, ZERO)
    anchored = eval_F(x, K).center - normalization_center(K)
    center = anchored if x > 0 else -anchored
    return Certified(center, Fraction(4, 2**K))


# ---------------------------------------------------------------------------
# whole-domain integral of the truncated series
# ---------------------------------------------------------------------------


def darboux_gap(K: int, cells_budget: int) -> Enclosure:
    """Certified enclosure of the integral of the full series over [-1, 1].

    The K-term truncation is integrated tooth by tooth: on each complete
    level-1 tooth the truncation's endpoint values are (+-1)/2 (the first
    layer dominates, deeper layers vanish at tooth endpoints) and every
    layer restricted to the tooth is a complete rescaled odd layer, so the
    tooth's exact integral is its trapezoid, namely zero.  The computed sum
    of trapezoids over ids |j| <= cells_budget is therefore exact, not an
    approximation.  Each unenumerated tail decomposes into complete teeth
    (zero again) plus at most one partial tooth, bounded by the longest
    tail tooth's length times the sup bound 1.  The dropped series tail is
    at most 2^-K pointwise, contributing 2^(1-K) over length 2.
    """
    if K < 1:
        raise DomainError(f"truncation K must be >= 1, got {K}")
    if cells_budget < 1:
        raise DomainError(f"cells budget must be >= 1, got {cells_budget}")
    total = ZERO
    for j in range(-cells_budget, cells_budget + 1):
        tooth = level1_cell(j)
        endpoint_sum = partial_sum(tooth.lo, K) + partial_sum(tooth.hi, K)
        total += endpoint_sum / 2 * tooth.length
    longest_tail_tooth = Fraction(1, (cells_budget + 2) * (cells_budget + 3))
    radius = 2 * longest_tail_tooth + Fraction(2, 2**K)
    return Enclosure(total - radius, total + radius)


# ---------------------------------------------------------------------------
# growth bound of the layer integrals near -1
# ---------------------------------------------------------------------------


def quotient_bound_check(k: int, n: int, x: RatLike) -> WitnessReport:
    """Certify |layer-k running integral| / (x + 1) <= 1/n on the n-th band.

    The band is 1/(n+1) - 1 < x <= 1/n - 1 (so x + 1 is the distance to the
    left domain end, between 1/(n+1) and 1/n).  The running integral from -1
    of any layer is bounded by the integrated sup over [-1, x], and the
    cancellation across complete mirrored teeth sharpens this to the stated
    reciprocal bound; here the inequality is certified exactly at x.
    """
    if k < 1:
        raise DomainError(f"layer index must be >= 1, got {k}")
    if n < 1:
        raise DomainError(f"band index must be >= 1, got {n}")
    x = as_rational(x)
    band_lo = Fraction(1, n + 1) - 1
    band_hi = Fraction(1, n) - 1
    if not (band_lo < x <= band_hi):
        raise DomainError(
            f"x must lie in ({band_lo}, {band_hi}] for band n={n}, got {x}"
        )
    value = eval_Fk(x, k)
    quotient = abs(value) / (x + 1)
    certificate = [
        check("band_lower", "<", band_lo, x),
        check("band_upper", "<=", x, band_hi),
        check("quotient_bounded", "<=", quotient, Fraction(1, n)),
    ]
    return make_report(
        kind="quotient_bound",
        inputs={"k": k, "n": n, "x": x},
        points=[(x, value)],
        certificate=certificate,
    )
