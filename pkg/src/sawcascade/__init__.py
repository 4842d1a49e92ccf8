"""Exact construction and certified verification of a sawtooth-cascade derivative.

The package builds, layer by layer, a bounded derivative that is positive
and negative on every subinterval, together with its antiderivative and a
signed variant of the pair.  Everything is computed in exact rational
arithmetic; approximate answers always come with a certified error radius.
"""

from sawcascade.antiderivative import (
    Enclosure,
    covered_length,
    darboux_gap,
    enclose_integral,
    eval_F,
    eval_F0,
    eval_Fk,
    eval_G,
    normalization_center,
    quotient_bound_check,
)
from sawcascade.cells import (
    ROOT,
    AffineMap,
    Cell,
    EPoint,
    cell,
    child_cell,
    child_map,
    children,
    e_points,
    first_level_of,
    level1_cell,
    level1_ids_at,
    locate,
)
from sawcascade.construction import (
    ABSORBING_VALUES,
    Certified,
    DomainError,
    OrbitInfo,
    Rat,
    as_rational,
    eval_f,
    eval_f1,
    eval_fk,
    eval_g,
    orbit,
    partial_sum,
)
from sawcascade.reports import (
    REPORT_KINDS,
    Check,
    WitnessReport,
    make_report,
    rat_str,
    recheck,
    report_from_dict,
    report_to_dict,
)
from sawcascade.suites import SUITE_ORDER, SUITES, SuiteConfig, run_suite_reports
from sawcascade.verifier import (
    NotAnEPointError,
    integral_crosscheck,
    local_min_check,
    non_extremum_witness,
    non_monotone_witness,
    oscillation_witness,
    structure_check,
)

__all__ = [
    "ABSORBING_VALUES",
    "AffineMap",
    "Cell",
    "Certified",
    "Check",
    "DomainError",
    "EPoint",
    "Enclosure",
    "NotAnEPointError",
    "OrbitInfo",
    "REPORT_KINDS",
    "ROOT",
    "Rat",
    "SUITES",
    "SUITE_ORDER",
    "SuiteConfig",
    "WitnessReport",
    "as_rational",
    "cell",
    "child_cell",
    "child_map",
    "children",
    "covered_length",
    "darboux_gap",
    "e_points",
    "enclose_integral",
    "eval_F",
    "eval_F0",
    "eval_Fk",
    "eval_G",
    "eval_f",
    "eval_f1",
    "eval_fk",
    "eval_g",
    "first_level_of",
    "integral_crosscheck",
    "level1_cell",
    "level1_ids_at",
    "local_min_check",
    "locate",
    "make_report",
    "non_extremum_witness",
    "non_monotone_witness",
    "normalization_center",
    "orbit",
    "oscillation_witness",
    "partial_sum",
    "quotient_bound_check",
    "rat_str",
    "recheck",
    "report_from_dict",
    "report_to_dict",
    "run_suite_reports",
    "structure_check",
]

__version__ = "0.1.0"
