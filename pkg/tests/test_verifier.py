"""Witness searches and exact certificates.

Frozen expectations here were derived by hand: margins are 2^-(k+1) for
first-level k, the chain walk for interior points lands in middle cells of
known size, and the band arithmetic for the local-minimum check is spelled
out value by value.  Every passing report must also survive ``recheck`` and
a serialization round trip.
"""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sawcascade.construction import DomainError, eval_fk, partial_sum
from sawcascade.reports import recheck, report_from_dict, report_to_dict
from sawcascade.verifier import (
    NotAnEPointError,
    integral_crosscheck,
    local_min_check,
    non_extremum_witness,
    non_monotone_witness,
    oscillation_witness,
    structure_check,
)

F = Fraction


def roundtrips(report) -> bool:
    return report_from_dict(report_to_dict(report)) == report


# ---------------------------------------------------------------------------
# oscillation
# ---------------------------------------------------------------------------


def test_oscillation_at_one_half():
    rep = oscillation_witness(F(1, 2), F(1, 100))
    assert rep.verdict and rep.error is None
    assert rep.input("first_level") == "2"
    (x0, fx0), (x1, f1), (x2, f2) = rep.points
    assert (x0, fx0) == (F(1, 2), F(1, 2))
    assert f1 > F(1, 2) + F(1, 8) and abs(x1 - F(1, 2)) < F(1, 100)
    assert f2 < F(1, 2) - F(1, 8) and abs(x2 - F(1, 2)) < F(1, 100)
    # witness values are the true series values: orbits absorbed at level 2
    assert f1 == partial_sum(x1, 2) and eval_fk(x1, 3) == 0
    assert recheck(rep) and roundtrips(rep)


def test_oscillation_at_domain_ends_is_one_sided():
    for x0 in (F(1), F(-1)):
        rep = oscillation_witness(x0, F(1, 10))
        assert rep.verdict
        assert rep.points[0] == (x0, F(0))
        for x, fx in rep.points[1:]:
            assert abs(x) < 1 and abs(x - x0) < F(1, 10)
        values = [fx for _, fx in rep.points[1:]]
        assert max(values) > F(1, 4) and min(values) < F(-1, 4)


def test_oscillation_at_deep_endpoint():
    rep = oscillation_witness(F(7, 10), F(1, 100))
    assert rep.verdict
    assert rep.input("first_level") == "5"
    assert rep.points[0] == (F(7, 10), F(-19, 80))


def test_oscillation_with_tiny_window():
    rep = oscillation_witness(F(1, 2), F(1, 10**6))
    assert rep.verdict
    for x, _fx in rep.points[1:]:
        assert 0 < abs(x - F(1, 2)) < F(1, 10**6)


def test_oscillation_rejects_non_endpoints():
    with pytest.raises(NotAnEPointError):
        oscillation_witness(F(0), F(1, 10))
    with pytest.raises(NotAnEPointError):
        oscillation_witness(F(1, 7), F(1, 10))


def test_oscillation_budget_exhaustion_is_reported():
    rep = oscillation_witness(F(1, 2), F(1, 100), fan_budget=0)
    assert not rep.verdict
    assert rep.error is not None and "budget" in rep.error
    assert recheck(rep) and roundtrips(rep)


# ---------------------------------------------------------------------------
# no local extrema
# ---------------------------------------------------------------------------


def test_non_extremum_at_origin():
    rep = non_extremum_witness(F(0), F(1, 100))
    assert rep.verdict
    assert rep.input("mode") == "interior_chain"
    (x1, s1), (x0, s0), (x2, s2) = rep.points
    assert x1 < x0 == F(0) < x2
    assert s0 == 0 and (s1 - s0) * (s2 - s0) < 0
    assert recheck(rep) and roundtrips(rep)


def test_non_extremum_delegates_at_endpoints():
    for x0 in (F(1, 2), F(7, 10), F(1)):
        rep = non_extremum_witness(x0, F(1, 50))
        assert rep.verdict
        assert rep.input("mode") == "endpoint_fan"
        assert rep.kind == "non_extremum"


def test_non_extremum_at_cycling_point():
    rep = non_extremum_witness(F(1, 7), F(1, 100))
    assert rep.verdict
    assert rep.input("mode") == "interior_chain"
    (x1, s1), (x0, s0), (x2, s2) = rep.points
    assert x1 < F(1, 7) < x2 and (s1 - s0) * (s2 - s0) < 0
    assert abs(x1 - F(1, 7)) < F(1, 100) and abs(x2 - F(1, 7)) < F(1, 100)


def test_non_extremum_depth_exhaustion():
    rep = non_extremum_witness(F(1, 7), F(1, 10**9), depth=8)
    assert not rep.verdict
    assert rep.error is not None and "depth" in rep.error
    assert recheck(rep)


@given(
    st.fractions(min_value=F(-99, 100), max_value=F(99, 100), max_denominator=500),
    st.integers(min_value=2, max_value=4),
)
@settings(max_examples=40, deadline=None)
def test_non_extremum_generic_points(x0, e):
    delta = F(1, 10**e)
    rep = non_extremum_witness(x0, delta)
    assert rep.verdict, (x0, delta, rep.error)
    xs = [x for x, _v in rep.points]
    assert min(xs) >= x0 - delta and max(xs) <= x0 + delta


# ---------------------------------------------------------------------------
# no interval of monotonicity
# ---------------------------------------------------------------------------


def test_non_monotone_around_one_half():
    rep = non_monotone_witness(F(2, 5), F(3, 5))
    assert rep.verdict
    (p1, v1), (p2, v2), (p3, v3) = rep.points
    assert F(2, 5) < p1 < p2 < p3 < F(3, 5)
    assert (v2 - v1) * (v3 - v2) < 0
    assert recheck(rep) and roundtrips(rep)


def test_non_monotone_whole_domain():
    rep = non_monotone_witness(F(-1), F(1))
    assert rep.verdict
    assert rep.input("mode") == "chain_cell_fan"


def test_non_monotone_tiny_interval_at_cycling_midpoint():
    a = F(1, 7) - F(1, 1000)
    b = F(1, 7) + F(1, 1000)
    rep = non_monotone_witness(a, b)
    assert rep.verdict
    for p, _v in rep.points:
        assert a < p < b


def test_non_monotone_right_half():
    rep = non_monotone_witness(F(1, 2), F(1))
    assert rep.verdict
    assert rep.input("mode") == "midpoint_fan"


def test_non_monotone_validates_interval():
    with pytest.raises(DomainError):
        non_monotone_witness(F(1, 2), F(1, 2))
    with pytest.raises(DomainError):
        non_monotone_witness(F(3, 4), F(1, 4))


@given(
    st.fractions(min_value=F(-9, 10), max_value=F(8, 10), max_denominator=300),
    st.integers(min_value=1, max_value=60),
)
@settings(max_examples=40, deadline=None)
def test_non_monotone_generic_intervals(a, width_scale):
    b = a + F(width_scale, 60) * F(1, 50) + F(1, 1000)
    if b > 1:
        b = F(1)
    rep = non_monotone_witness(a, b)
    assert rep.verdict, (a, b, rep.error)
    ps = [p for p, _v in rep.points]
    assert ps == sorted(ps) and a < ps[0] and ps[-1] < b


# ---------------------------------------------------------------------------
# local minimum bands
# ---------------------------------------------------------------------------


def test_local_min_frozen_band_two():
    rep = local_min_check(F(3, 16))
    assert rep.verdict
    assert rep.input("band_k") == "2"
    assert rep.points == ((F(3, 16), F(3, 8)),)
    labels = {c.label: c for c in rep.certificate}
    assert labels["truncation_is_k_x"].lhs == F(3, 8)
    assert labels["margin_positive"].lhs == F(3, 8) - F(1, 4)
    assert recheck(rep) and roundtrips(rep)


def test_local_min_at_dyadic_band_edge():
    # 1/8 closes band k = 3, not k = 2: the strict margin needs the deeper band
    rep = local_min_check(F(1, 8))
    assert rep.verdict
    assert rep.input("band_k") == "3"
    assert rep.points == ((F(1, 8), F(3, 8)),)


def test_local_min_deep_band():
    rep = local_min_check(F(3, 2048))
    assert rep.verdict
    assert rep.input("band_k") == "9"
    assert rep.points == ((F(3, 2048), F(27, 2048)),)


@given(st.fractions(min_value=F(1, 10**6), max_value=F(1, 4), max_denominator=10**6))
@settings(max_examples=120)
def test_local_min_everywhere_on_the_interval(x):
    if x == F(1, 4):
        return
    rep = local_min_check(x)
    assert rep.verdict
    assert recheck(rep)


def test_local_min_domain():
    for bad in (F(0), F(1, 4), F(-1, 8), F(1, 2)):
        with pytest.raises(DomainError):
            local_min_check(bad)


# ---------------------------------------------------------------------------
# structural suite
# ---------------------------------------------------------------------------


def test_structure_check_level_one():
    rep = structure_check(1, 10)
    assert rep.verdict
    labels = {c.label: c for c in rep.certificate}
    assert labels["total_length_closed_form"].lhs == F(11, 6)
    assert labels["level_k_cell_count"].lhs == 21
    assert recheck(rep) and roundtrips(rep)


@pytest.mark.parametrize("k, budget", [(1, 6), (2, 4), (2, 6), (3, 3)])
def test_structure_check_deeper(k, budget):
    rep = structure_check(k, budget)
    assert rep.verdict, rep.failed_checks()


def test_structure_check_guards():
    with pytest.raises(DomainError):
        structure_check(0, 5)
    with pytest.raises(DomainError):
        structure_check(12, 50)  # enumeration too large


# ---------------------------------------------------------------------------
# integral cross-check
# ---------------------------------------------------------------------------


def test_integral_crosscheck_passes():
    from sawcascade.antiderivative import eval_Fk

    xs = [F(0), F(1, 3), F(-2, 5), F(1), F(-1), F(7, 10)]
    rep = integral_crosscheck(2, xs, 20)
    assert rep.verdict
    assert len(rep.points) == len(xs)
    for (x, v), raw in zip(rep.points, xs):
        assert x == raw and v == eval_Fk(x, 2)
    assert recheck(rep) and roundtrips(rep)


def test_integral_crosscheck_validates():
    with pytest.raises(DomainError):
        integral_crosscheck(0, [F(1, 2)], 10)
    with pytest.raises(DomainError):
        integral_crosscheck(2, [], 10)
