"""End-to-end tests of the command-line interface via the in-process runner.

Everything runs through ``run(argv)`` so the tests see the same code path as
the installed script, including exit codes and output streams.
"""

from __future__ import annotations

import io
import json
from fractions import Fraction as F

import pytest

from sawcascade.cli import (
    EXIT_OK,
    EXIT_USAGE,
    EXIT_VERIFICATION_FAILED,
    SampleConfig,
    emit_samples,
    parse_rational,
    run,
    run_suite,
)
from sawcascade.construction import DomainError, eval_f1
from sawcascade.suites import SuiteConfig


def invoke(argv: list[str]) -> tuple[int, str, str]:
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


# ---------------------------------------------------------------------------
# argument parsing helpers
# ---------------------------------------------------------------------------


def test_parse_rational_fraction_and_decimal() -> None:
    assert parse_rational("7/10") == F(7, 10)
    assert parse_rational("-1/3") == F(-1, 3)
    assert parse_rational("0.25") == F(1, 4)
    assert parse_rational(" 1 ") == F(1)


def test_parse_rational_rejects_garbage() -> None:
    with pytest.raises(DomainError):
        parse_rational("pi")
    with pytest.raises(DomainError):
        parse_rational("1/0")


# ---------------------------------------------------------------------------
# eval
# ---------------------------------------------------------------------------


def test_eval_f_quarter_is_exact_half() -> None:
    code, out, _ = invoke(["eval", "--fn", "f", "--x", "1/4", "--K", "30"])
    assert code == EXIT_OK
    assert json.loads(out) == {"center": "1/2", "radius": "0"}


def test_eval_f1_spot_values() -> None:
    # negative arguments need the --x=value form so argparse keeps the sign
    for x, want in [("1/2", "1"), ("7/10", "-1/5"), ("7/12", "0"), ("-2/3", "1")]:
        code, out, _ = invoke(["eval", "--fn", "f1", f"--x={x}"])
        assert code == EXIT_OK
        assert json.loads(out) == {"center": want, "radius": "0"}


def test_eval_fk_uses_layer_index() -> None:
    code, out, _ = invoke(["eval", "--fn", "fk", "--x", "7/10", "--k", "2"])
    assert code == EXIT_OK
    assert json.loads(out)["center"] == "-2/5"


def test_eval_cycling_point_reports_truncation_radius() -> None:
    code, out, _ = invoke(["eval", "--fn", "f", "--x", "1/7", "--K", "4"])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["radius"] == "1/16"


def test_eval_G_at_one() -> None:
    code, out, _ = invoke(["eval", "--fn", "G", "--x", "1", "--K", "3"])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert F(payload["center"]) == F(1, 6) * (1 - F(1, 4) ** 3)
    assert F(payload["radius"]) == F(4, 8)


def test_eval_outside_domain_is_usage_error() -> None:
    code, _, err = invoke(["eval", "--fn", "f", "--x", "3/2"])
    assert code == EXIT_USAGE
    assert "error:" in err


def test_eval_bad_rational_is_usage_error() -> None:
    code, _, err = invoke(["eval", "--fn", "f", "--x", "zebra"])
    assert code == EXIT_USAGE
    assert "zebra" in err


def test_eval_unknown_function_is_usage_error(capsys: pytest.CaptureFixture) -> None:
    code, _, _ = invoke(["eval", "--fn", "nope", "--x", "0"])
    capsys.readouterr()
    assert code == EXIT_USAGE


# ---------------------------------------------------------------------------
# sample
# ---------------------------------------------------------------------------


def test_sample_csv_header_and_values() -> None:
    code, out, _ = invoke(
        ["sample", "--fn", "f1", "--a", "0", "--b", "1", "--count", "5"]
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "x,center,radius,exact"
    assert lines[1] == "0,0,0,true"
    assert lines[2] == "1/4,1/2,0,true"
    assert len(lines) == 6


def test_sample_json_format() -> None:
    code, out, _ = invoke(
        ["sample", "--fn", "f", "--a", "0", "--b", "1/2", "--count", "2",
         "--K", "10", "--format", "json"]
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload[0] == {"center": "0", "exact": True, "radius": "0", "x": "0"}
    assert payload[1]["x"] == "1/2"


def test_sample_single_point_and_bad_range() -> None:
    code, out, _ = invoke(["sample", "--fn", "f1", "--a", "1/2", "--b", "1/2",
                           "--count", "1"])
    assert code == EXIT_OK
    assert out.strip().splitlines()[1] == "1/2,1,0,true"
    code, _, err = invoke(["sample", "--fn", "f1", "--a", "1", "--b", "0"])
    assert code == EXIT_USAGE
    assert "a <= b" in err


def test_emit_samples_grid_is_exact() -> None:
    cfg = SampleConfig(fn="f1", a=F(-1), b=F(1), count=9, k=1, K=30, fmt="csv")
    lines = emit_samples(cfg).strip().splitlines()
    xs = [F(line.split(",")[0]) for line in lines[1:]]
    assert xs == [F(-1) + F(1, 4) * i for i in range(9)]
    for line, x in zip(lines[1:], xs):
        assert F(line.split(",")[1]) == eval_f1(x)


# ---------------------------------------------------------------------------
# intervals
# ---------------------------------------------------------------------------


def test_intervals_level1_csv() -> None:
    code, out, _ = invoke(
        ["intervals", "--k", "1", "--index-budget", "2", "--window", "0", "1"]
    )
    assert code == EXIT_OK
    lines = out.strip().splitlines()
    assert lines[0] == "address,lo,hi,slope,intercept"
    assert lines[1] == "0,-1/2,1/2,2,0"
    assert lines[2] == "1,1/2,2/3,-12,7"
    assert lines[3] == "2,2/3,3/4,24,-17"
    assert len(lines) == 4


def test_intervals_level2_json_window() -> None:
    code, out, _ = invoke(
        ["intervals", "--k", "2", "--index-budget", "1", "--window",
         "1/4", "1/3", "--format", "json"]
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    rows = {tuple(row["address"]): row for row in payload}
    assert rows[(0, 1)]["lo"] == "1/4"
    assert rows[(0, 1)]["hi"] == "1/3"
    assert rows[(0, 1)]["slope"] == "-24"
    assert rows[(0, 1)]["intercept"] == "7"
    for row in payload:
        assert F(row["hi"]) >= F(1, 4) and F(row["lo"]) <= F(1, 3)


def test_intervals_guard_against_explosion() -> None:
    code, _, err = invoke(["intervals", "--k", "9", "--index-budget", "50"])
    assert code == EXIT_USAGE
    assert "too large" in err


# ---------------------------------------------------------------------------
# integrate
# ---------------------------------------------------------------------------


def test_integrate_frozen_layer1() -> None:
    code, out, _ = invoke(
        ["integrate", "--k", "1", "--upto", "0", "--index-budget", "40"]
    )
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload == {"lower": "-25/84", "upper": "-17/84", "width": "2/21"}


def test_integrate_full_interval_straddles_zero() -> None:
    code, out, _ = invoke(["integrate", "--k", "3", "--upto", "1"])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert F(payload["lower"]) <= 0 <= F(payload["upper"])


def test_integrate_bad_layer_is_usage_error() -> None:
    code, _, err = invoke(["integrate", "--k", "0", "--upto", "1"])
    assert code == EXIT_USAGE
    assert "error:" in err


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def test_verify_local_min_small_count_passes() -> None:
    code, out, err = invoke(["verify", "local-min", "--count", "4"])
    assert code == EXIT_OK
    payload = json.loads(out)
    assert payload["suite"] == "local-min"
    assert payload["seed"] == 20240601
    assert payload["summary"] == {"pass": 4, "fail": 0}
    assert len(payload["cases"]) == 4
    case = payload["cases"][0]
    assert set(case) == {"kind", "inputs", "points", "verdict", "certificate", "error"}
    assert "4 passed, 0 failed" in err


def test_verify_is_byte_identical_across_runs() -> None:
    argv = ["verify", "nowhere-monotone", "--count", "6", "--seed", "7"]
    _, first, _ = invoke(argv)
    _, second, _ = invoke(argv)
    assert first == second
    assert json.loads(first)["seed"] == 7


def test_verify_seed_changes_cases() -> None:
    _, a, _ = invoke(["verify", "no-extrema", "--count", "3", "--seed", "1"])
    _, b, _ = invoke(["verify", "no-extrema", "--count", "3", "--seed", "2"])
    assert json.loads(a)["summary"] == json.loads(b)["summary"]
    assert a != b


def test_verify_exhausted_budget_fails_with_exit_1() -> None:
    code, out, err = invoke(
        ["verify", "oscillation", "--fan-budget", "0", "--max-level", "1"]
    )
    assert code == EXIT_VERIFICATION_FAILED
    payload = json.loads(out)
    assert payload["summary"]["fail"] == payload["summary"]["pass"] + payload["summary"]["fail"]
    assert all(case["error"] for case in payload["cases"])
    assert "failed" in err


def test_verify_unknown_suite_is_usage_error(capsys: pytest.CaptureFixture) -> None:
    code, _, _ = invoke(["verify", "nosuchsuite"])
    capsys.readouterr()
    assert code == EXIT_USAGE


def test_verify_out_file(tmp_path) -> None:
    target = tmp_path / "report.json"
    code, out, _ = invoke(
        ["verify", "darboux", "--K", "8", "--cells-budget", "20",
         "--out", str(target)]
    )
    assert code == EXIT_OK
    assert out == ""
    payload = json.loads(target.read_text())
    assert payload["summary"]["fail"] == 0


def test_run_suite_report_shape() -> None:
    cfg = SuiteConfig(count=2, structure_max_level=1)
    report = run_suite("structure", cfg)
    assert report["suite"] == "structure"
    assert report["parameters"]["index_budget"] == 50
    assert report["parameters"]["delta"] == "1/1000"
    assert report["summary"]["pass"] == len(report["cases"])


def test_run_suite_all_concatenates(capsys: pytest.CaptureFixture) -> None:
    cfg = SuiteConfig(
        count=2, max_level=2, n_max=3, structure_max_level=1, cells_budget=12, K=8
    )
    report = run_suite("all", cfg)
    kinds = {case["kind"] for case in report["cases"]}
    assert {"structure", "oscillation", "local_min", "quotient_bound"} <= kinds
    assert report["summary"]["fail"] == 0


def test_missing_subcommand_is_usage_error(capsys: pytest.CaptureFixture) -> None:
    code, _, _ = invoke([])
    capsys.readouterr()
    assert code == EXIT_USAGE
