"""Seeded verification suites: reproducible batches of witness reports.

Each suite draws its sample points from an explicitly seeded Mersenne
generator (integer draws only, so results are stable across platforms and
Python versions) or enumerates cell endpoints outright.  Given the same
configuration a suite returns the identical list of reports, certificate
for certificate.

The endpoint enumeration for the oscillation suite tapers its per-level
index budget so that every level's cell family contributes about the same
number of endpoints: level m uses the largest b with b^m <= index_budget.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from typing import Callable

from sawcascade.antiderivative import darboux_gap, quotient_bound_check
from sawcascade.cells import child_cell, level1_cell
from sawcascade.construction import Rat
from sawcascade.reports import WitnessReport, check, make_report
from sawcascade.verifier import (
    integral_crosscheck,
    local_min_check,
    non_extremum_witness,
    non_monotone_witness,
    oscillation_witness,
    structure_check,
)

F = Fraction


@dataclass(frozen=True)
class SuiteConfig:
    """Knobs shared by all suites; every field has a reproducible default."""

    seed: int = 20240601
    count: int = 100
    K: int = 30
    depth: int = 40
    index_budget: int = 50
    cells_budget: int = 60
    n_max: int = 50
    fan_budget: int = 64
    delta: Rat = F(1, 1000)
    max_level: int = 6
    structure_max_level: int = 3


def _rng(cfg: SuiteConfig) -> random.Random:
    return random.Random(cfg.seed)


def _random_rational(rng: random.Random, lo: Rat, hi: Rat, max_den: int) -> Rat:
    """A random rational strictly inside (lo, hi) with denominator <= max_den."""
    while True:
        den = rng.randint(2, max_den)
        num_lo = floor(lo * den) + 1
        num_hi = ceil(hi * den) - 1
        if num_lo > num_hi:
            continue
        x = F(rng.randint(num_lo, num_hi), den)
        if lo < x < hi:
            return x


def _integer_root(base: int, power: int) -> int:
    """Largest b >= 1 with b**power <= base."""
    b = 1
    while (b + 1) ** power <= base:
        b += 1
    return b


def tapered_endpoints(max_level: int, index_budget: int) -> list[tuple[Rat, int]]:
    """Cell endpoints with first levels 1..max_level, tapered per level.

    Level-m cells are enumerated with per-coordinate budget
    _integer_root(index_budget, m), so each level contributes roughly
    index_budget^(something bounded) endpoints instead of blowing up
    geometrically.  Returns (x, first_level) pairs sorted by x.
    """
    found: dict[Rat, int] = {F(-1): 1, F(1): 1}
    for m in range(1, max_level):
        budget = _integer_root(index_budget, m)
        ids = range(-budget, budget + 1)
        cells = [level1_cell(j) for j in ids]
        for _ in range(m - 1):
            cells = [child_cell(c, j) for c in cells for j in ids]
        for c in cells:
            for endpoint in (c.lo, c.hi):
                if endpoint not in found:
                    found[endpoint] = m + 1
    return sorted(found.items())


# ---------------------------------------------------------------------------
# the suites
# ---------------------------------------------------------------------------


def suite_oscillation(cfg: SuiteConfig) -> list[WitnessReport]:
    return [
        oscillation_witness(x, cfg.delta, cfg.depth, cfg.fan_budget)
        for x, _first_level in tapered_endpoints(cfg.max_level, cfg.index_budget)
    ]


def suite_no_extrema(cfg: SuiteConfig) -> list[WitnessReport]:
    rng = _rng(cfg)
    xs = [
        _random_rational(rng, F(-1), F(1), 10**6) for _ in range(cfg.count)
    ]
    reports = []
    for x in xs:
        for exponent in (1, 2, 3):
            reports.append(
                non_extremum_witness(
                    x, F(1, 10**exponent), cfg.depth, cfg.fan_budget
                )
            )
    return reports


def suite_nowhere_monotone(cfg: SuiteConfig) -> list[WitnessReport]:
    rng = _rng(cfg)
    reports = []
    min_width = F(1, 1000)
    while len(reports) < cfg.count:
        u = _random_rational(rng, F(-1), F(1), 1000)
        v = _random_rational(rng, F(-1), F(1), 1000)
        a, b = min(u, v), max(u, v)
        if b - a < min_width:
            continue
        reports.append(non_monotone_witness(a, b, cfg.depth, cfg.fan_budget))
    return reports


def suite_local_min(cfg: SuiteConfig) -> list[WitnessReport]:
    rng = _rng(cfg)
    return [
        local_min_check(_random_rational(rng, F(0), F(1, 4), 10**6))
        for _ in range(cfg.count)
    ]


def suite_quotient_bound(cfg: SuiteConfig) -> list[WitnessReport]:
    rng = _rng(cfg)
    reports = []
    for k in range(1, 9):
        for n in range(2, cfg.n_max + 1):
            band_lo = F(1, n + 1) - 1
            band_hi = F(1, n) - 1
            seeded = band_lo + (band_hi - band_lo) * F(rng.randint(1, 999), 1000)
            for x in ((band_lo + band_hi) / 2, band_hi, seeded):
                reports.append(quotient_bound_check(k, n, x))
    return reports


def suite_integral_crosscheck(cfg: SuiteConfig) -> list[WitnessReport]:
    rng = _rng(cfg)
    reports = []
    for k in range(1, 7):
        xs = [F(-1), F(-1, 2), F(0), F(1, 3), F(7, 10), F(1)]
        xs += [_random_rational(rng, F(-1), F(1), 10**4) for _ in range(4)]
        reports.append(integral_crosscheck(k, xs, cfg.index_budget))
    return reports


def suite_structure(cfg: SuiteConfig) -> list[WitnessReport]:
    budget = min(6, cfg.index_budget)
    return [
        structure_check(k, budget)
        for k in range(1, cfg.structure_max_level + 1)
    ]


def suite_darboux(cfg: SuiteConfig) -> list[WitnessReport]:
    enc = darboux_gap(cfg.K, cfg.cells_budget)
    certificate = [
        check("integral_at_least", "<=", enc.lower, 0),
        check("integral_at_most", "<=", 0, enc.upper),
    ]
    report = make_report(
        "integral_crosscheck",
        {
            "target": "whole_domain_series_integral",
            "K": cfg.K,
            "cells_budget": cfg.cells_budget,
            "width": enc.width,
        },
        [(F(0), enc.midpoint)],
        certificate,
    )
    return [report]


SUITES: dict[str, Callable[[SuiteConfig], list[WitnessReport]]] = {
    "structure": suite_structure,
    "oscillation": suite_oscillation,
    "no-extrema": suite_no_extrema,
    "nowhere-monotone": suite_nowhere_monotone,
    "local-min": suite_local_min,
    "quotient-bound": suite_quotient_bound,
    "integral-crosscheck": suite_integral_crosscheck,
    "darboux": suite_darboux,
}

SUITE_ORDER = list(SUITES) + ["all"]


def run_suite_reports(name: str, cfg: SuiteConfig) -> list[WitnessReport]:
    """Reports for one suite name, or every suite in order for 'all'."""
    if name == "all":
        reports: list[WitnessReport] = []
        for suite_name in SUITES:
            reports.extend(SUITES[suite_name](cfg))
        return reports
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](cfg)
