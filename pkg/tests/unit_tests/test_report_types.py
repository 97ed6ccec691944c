import json

from rich.console import Console

from specsetlab.types.report_types import CheckResult, InstanceReport, RunReport
from specsetlab.utils.rich_cli import (
    print_report,
    render_check_table,
    render_instance_table,
    render_summary,
)

PASS = CheckResult("defect", 1e-12, 1e-7, True)
FAIL = CheckResult("bound", 5.0, 3.0, False)
EXPECTED = CheckResult("psd", -0.3, 0.0, False, expected_fail=True)


def make_report():
    return RunReport(
        command="verify",
        seed=3,
        instances=(
            InstanceReport(2, "c" * 64, "lens", 5, (PASS, FAIL), metrics={"defect": 1e-12}),
            InstanceReport(
                0, "a" * 64, "annulus", 3, (PASS,), metrics={"ratio": 0.5, "defect": 2e-11}
            ),
            InstanceReport(1, "b" * 64, "custom", None, skipped="pole on X: 0.5+0j"),
            InstanceReport(3, "d" * 64, "custom", None, (PASS, EXPECTED)),
        ),
        wall_time=1.25,
    )


def test_check_result_asdict():
    assert PASS.asdict() == {"name": "defect", "value": 1e-12, "threshold": 1e-7, "pass": True}
    assert EXPECTED.asdict()["expected_fail"] is True


def test_instance_passed():
    report = make_report()
    passed = {r.index: r.passed for r in report.instances}
    assert passed == {0: True, 1: False, 2: False, 3: True}
    failed = {r.index: r.failed for r in report.instances}
    assert failed == {0: False, 1: False, 2: True, 3: False}


def test_run_report_summary_and_layout():
    report = make_report()
    assert not report.passed
    assert report.summary() == {"instances": 4, "skipped": 1, "failed": 1, "passed": 2}
    data = json.loads(json.dumps(report.asdict()))
    assert data["schema"] == 1
    assert data["pass"] is False
    assert [r["index"] for r in data["instances"]] == [0, 1, 2, 3]
    assert data["instances"][1]["skipped"] == "pole on X: 0.5+0j"
    assert list(data["instances"][0]["metrics"]) == ["defect", "ratio"]
    assert sorted(data) == [
        "checks",
        "command",
        "instances",
        "metrics",
        "pass",
        "schema",
        "seed",
        "summary",
        "wall_time",
    ]


def test_errored_instance_fails_the_run():
    errored = InstanceReport(0, "a" * 64, "annulus", 7, error="Quadrature did not converge")
    assert not errored.passed
    assert errored.failed
    assert errored.asdict()["error"] == "Quadrature did not converge"
    report = RunReport(command="verify", seed=7, instances=(errored,))
    assert not report.passed
    assert report.summary() == {"instances": 1, "skipped": 0, "failed": 1, "passed": 0}
    assert "ERROR: Quadrature did not converge" in render(render_instance_table(report))


def test_all_skipped_campaign_does_not_pass():
    skipped = InstanceReport(0, "", "", None, skipped="pole on X")
    report = RunReport(command="verify", seed=None, instances=(skipped,))
    assert not report.passed
    assert report.summary() == {"instances": 1, "skipped": 1, "failed": 0, "passed": 0}
    assert "error" not in skipped.asdict()


def test_run_report_with_checks_only():
    report = RunReport(command="bounds", seed=None, checks=(PASS, EXPECTED))
    assert report.passed
    assert report.summary()["instances"] == 0


def render(renderable) -> str:
    console = Console(record=True, width=160)
    console.print(renderable)
    return console.export_text()


def test_instance_table_shows_failures_first():
    text = render(render_instance_table(make_report()))
    assert text.index("skipped: pole on X") < text.index("FAIL: bound")
    assert text.index("FAIL: bound") < text.index("expected fail")
    assert "expected fail: psd" in text
    assert "2.00e-11" in text


def test_check_table_and_summary():
    report = RunReport(command="bounds", seed=None, checks=(PASS, FAIL))
    text = render(render_check_table(report))
    assert "defect" in text and "bound" in text
    assert render_summary(make_report()).plain == "2 passed, 1 failed, 1 skipped in 1.25 s"


def test_print_report_writes_to_given_console():
    console = Console(record=True, width=160)
    print_report(make_report(), console)
    assert "1 failed" in console.export_text()
