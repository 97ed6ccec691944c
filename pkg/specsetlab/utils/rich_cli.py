from rich.console import Console
from rich.table import Table
from rich.text import Text

from specsetlab.types.report_types import InstanceReport, RunReport

_MAX_ROWS = 40


def _status(report: InstanceReport) -> Text:
    if report.skipped is not None:
        return Text(f"skipped: {report.skipped}", style="yellow")
    if report.error is not None:
        return Text(f"ERROR: {report.error}", style="bold red")
    if report.passed:
        expected = [c.name for c in report.checks if c.expected_fail and not c.passed]
        if expected:
            return Text(f"pass (expected fail: {', '.join(expected)})", style="cyan")
        return Text("pass", style="green")
    failed = [c.name for c in report.checks if not (c.passed or c.expected_fail)]
    return Text(f"FAIL: {', '.join(failed)}", style="bold red")


def render_instance_table(report: RunReport) -> Table:
    """One row per instance; long campaigns show failures and skips first."""
    table = Table(title=f"specsetlab {report.command} (seed {report.seed})")
    table.add_column("#", justify="right", style="cyan")
    table.add_column("kind", justify="center", style="magenta")
    table.add_column("seed", justify="right")
    table.add_column("defect", justify="right")
    table.add_column("ratio", justify="right")
    table.add_column("status", justify="left")

    rows = sorted(report.instances, key=lambda r: (r.passed, r.index))
    for instance in rows[:_MAX_ROWS]:
        metrics = instance.metrics
        table.add_row(
            str(instance.index),
            instance.kind,
            "" if instance.seed is None else str(instance.seed),
            f"{metrics['defect']:.2e}" if "defect" in metrics else "",
            f"{metrics['ratio']:.4f}" if "ratio" in metrics else "",
            _status(instance),
        )
    if len(rows) > _MAX_ROWS:
        table.caption = f"{len(rows) - _MAX_ROWS} more instances not shown"
    return table


def render_check_table(report: RunReport) -> Table:
    table = Table(title="Checks")
    table.add_column("check", style="cyan")
    table.add_column("value", justify="right")
    table.add_column("threshold", justify="right")
    table.add_column("pass", justify="center")
    for check in report.checks:
        mark = Text("yes", style="green") if check.passed else Text("no", style="red")
        table.add_row(check.name, f"{check.value:.10g}", f"{check.threshold:.10g}", mark)
    return table


def render_summary(report: RunReport) -> Text:
    summary = report.summary()
    style = "bold green" if report.passed else "bold red"
    return Text(
        f"{summary['passed']} passed, {summary['failed']} failed, {summary['skipped']} skipped "
        f"in {report.wall_time:.2f} s",
        style=style,
    )


def print_report(report: RunReport, console: Console | None = None) -> None:
    """Render the report on stderr so that stdout carries only the JSON."""
    console = console or Console(stderr=True)
    if report.instances:
        console.print(render_instance_table(report))
    if report.checks:
        console.print(render_check_table(report))
    console.print(render_summary(report))
