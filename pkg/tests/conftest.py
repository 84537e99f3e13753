"""Shared fixtures and the acceptance-criteria reporter.

Tests marked ``@pytest.mark.acceptance(num=N, part="a", label="...")`` feed a
summary table printed at the end of the run: one PASS/FAIL line per
criterion.  A criterion with any failing part reports FAIL; expected
failures (strict xfail) count as FAIL because the behavior they describe is
genuinely not met, even though the suite itself stays green.
"""

from __future__ import annotations

import numpy as np
import pytest

from amstirap import rb87_params

_CRITERION_TITLES = {
    1: "headline conversion efficiency (both decay-rate readings)",
    2: "dark-state population limits and identity",
    3: "norm conservation and monotone decay",
    4: "gauge invariance of populations",
    5: "two-photon detuning schedule endpoints",
    6: "stability-map structure",
    7: "eigenvalue flag vs direct perturbation-growth oracle",
    8: "Jacobian cross-checks (FD vs analytic, pairing, trace)",
    9: "delay ordering and detuning response of efficiency",
    10: "byte-identical CSVs across thread counts",
    11: "figure rendering from CSV outputs",
}


def pytest_configure(config):
    config.addinivalue_line(
        "markers",
        "acceptance(num, part=None, label=''): tag a test as implementing "
        "one acceptance criterion (or one part of it)",
    )
    config._acceptance_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    # Record call-phase outcomes, plus setup-phase skips (skipif).
    if report.when != "call" and not (report.when == "setup" and report.skipped):
        return
    num = marker.kwargs.get("num", marker.args[0] if marker.args else None)
    part = marker.kwargs.get("part")
    if hasattr(report, "wasxfail") and report.skipped:
        verdict = "FAIL (expected: documented model limitation)"
    elif report.passed:
        verdict = "PASS"
    elif report.skipped:
        verdict = "SKIP"
    else:
        verdict = "FAIL"
    item.config._acceptance_results.setdefault(num, []).append((part, verdict))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance_results", None)
    if not results:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num in sorted(results):
        parts = results[num]
        verdicts = [v for _, v in parts]
        if all(v.startswith("SKIP") for v in verdicts):
            overall = "SKIP"
        elif any(v.startswith("FAIL") for v in verdicts):
            overall = "FAIL"
        else:
            overall = "PASS"
        title = _CRITERION_TITLES.get(num, "")
        line = f"criterion {num:2d}: {overall} - {title}"
        named = [(p, v) for p, v in parts if p]
        if named and len(parts) > 1:
            detail = ", ".join(f"{p}: {v.split(' ')[0]}" for p, v in sorted(named))
            line += f"  [{detail}]"
        markup = {"PASS": {"green": True}, "FAIL": {"red": True}, "SKIP": {"yellow": True}}
        tr.write_line(line, **markup[overall])


@pytest.fixture(scope="session")
def params74():
    """Default parameter set: decay rate read as 74 rad/us."""
    return rb87_params()


@pytest.fixture(scope="session")
def params074():
    """Fast variant: decay rate read as 0.74 rad/us (same detuning ratio)."""
    return rb87_params(gamma_b=0.74)


@pytest.fixture(scope="session")
def headline_run(tmp_path_factory):
    """Default-parameter `evolve` CLI run; shared by several criteria."""
    from amstirap.cli import main

    outdir = tmp_path_factory.mktemp("headline")
    code = main(["evolve", "--out", str(outdir)])
    assert code == 0
    return outdir


@pytest.fixture(scope="session")
def default_map(params74):
    """Full stability map on the default axes; shared by criteria 6 and 7."""
    from amstirap import map_scan

    return map_scan(params74, threads=2)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260815)
