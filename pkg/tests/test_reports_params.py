"""Report serialization and parameter-bundle invariants."""

import json

import pytest

from wkit import CheckReport, EllipticParams, TruncationPolicy, sort_reports
from wkit.errors import ModulusOutOfRange, ZeroArgument
from wkit.qseries import tau_N


def test_report_pass_flag_derived():
    r = CheckReport(suite="s", check="c", identity="i", inputs={},
                    residual=1e-9, tolerance=1e-8)
    assert r.passed
    r = CheckReport(suite="s", check="c", identity="i", inputs={},
                    residual=1e-7, tolerance=1e-8)
    assert not r.passed


def test_report_json_round_trip():
    r = CheckReport(suite="s", check="c", identity="i",
                    inputs={"z": 1.2 + 0.3j, "nested": {"w": [1j, 2]}},
                    residual=0.5, tolerance=1.0, wall_ms=3.25)
    d = r.to_dict()
    # complex values serialize as [re, im]; the canonical form is stable
    assert d["inputs"]["z"] == [1.2, 0.3]
    again = CheckReport.from_dict(json.loads(json.dumps(d)))
    assert again.to_dict() == d
    assert again.passed == r.passed


def test_sort_reports_canonical():
    a = CheckReport("b", "x", "i", {"p": 2}, 0, 1)
    b = CheckReport("a", "y", "i", {"p": 1}, 0, 1)
    c = CheckReport("a", "x", "i", {"p": 1}, 0, 1)
    assert [r.suite + r.check for r in sort_reports([a, b, c])] == ["ax", "ay", "bx"]


def test_elliptic_params_derived_exact():
    pr = EllipticParams(N=3, q=0.5, s=0.7, c=0.25)
    assert abs(pr.p - 0.49) < 1e-15
    assert abs(pr.s_star - 0.7 * 0.5 ** -0.25) < 1e-15
    assert abs(pr.s_star**2 - pr.p * 0.5 ** (-2 * 0.25)) < 1e-15
    assert abs(pr.omega - complex(-0.5, 3**0.5 / 2)) < 1e-15


def test_elliptic_params_validation():
    with pytest.raises(ValueError):
        EllipticParams(N=1, q=0.5, s=0.5)
    with pytest.raises(ValueError):
        EllipticParams(N=2, q=1.1, s=0.5)
    with pytest.raises(ValueError):
        EllipticParams(N=2, q=0.5, s=0.0)
    with pytest.raises(ValueError):
        EllipticParams(N=2, q=1 - 1e-9, s=0.5)  # q^(2N) too close to 1


def test_truncation_policy_validation():
    with pytest.raises(ValueError):
        TruncationPolicy(tail_eps=1e-6)
    with pytest.raises(ValueError):
        TruncationPolicy(max_terms=10)


def test_require_elliptic_gate():
    pr = EllipticParams(N=2, q=0.5, s=2.0)  # |p| = 4
    with pytest.raises(ModulusOutOfRange):
        pr.require_elliptic()


def test_scalar_error_paths():
    pr = EllipticParams(N=2, q=0.5, s=0.5)
    with pytest.raises(ZeroArgument):
        tau_N(0.0, pr)
