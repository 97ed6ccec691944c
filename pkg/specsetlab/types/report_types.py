from dataclasses import dataclass, field


@dataclass(frozen=True)
class BoundCurveSample:
    R: float
    shields: float
    thm1_upper: float
    gamma1: float
    gamma: float
    paulsen: float

    def asdict(self) -> dict:
        return {
            "R": self.R,
            "shields": self.shields,
            "thm1_upper": self.thm1_upper,
            "gamma1": self.gamma1,
            "gamma": self.gamma,
            "paulsen": self.paulsen,
        }


@dataclass(frozen=True)
class CheckResult:
    """One named check: ``passed`` is ``value <= threshold`` unless stated otherwise."""

    name: str
    value: float
    threshold: float
    passed: bool
    expected_fail: bool = False

    def asdict(self) -> dict:
        result = {
            "name": self.name,
            "value": self.value,
            "threshold": self.threshold,
            "pass": self.passed,
        }
        if self.expected_fail:
            result["expected_fail"] = True
        return result


@dataclass(frozen=True)
class InstanceReport:
    index: int
    digest: str
    kind: str
    seed: int | None
    checks: tuple[CheckResult, ...] = ()
    skipped: str | None = None
    metrics: dict = field(default_factory=dict)
    error: str | None = None

    @property
    def passed(self) -> bool:
        """Skipped and errored instances never pass."""
        if self.skipped is not None or self.error is not None:
            return False
        return all(check.passed or check.expected_fail for check in self.checks)

    @property
    def failed(self) -> bool:
        return self.skipped is None and not self.passed

    def asdict(self) -> dict:
        result = {
            "index": self.index,
            "digest": self.digest,
            "kind": self.kind,
            "seed": self.seed,
            "checks": [check.asdict() for check in self.checks],
            "metrics": dict(sorted(self.metrics.items())),
        }
        if self.skipped is not None:
            result["skipped"] = self.skipped
        if self.error is not None:
            result["error"] = self.error
        return result


@dataclass(frozen=True)
class RunReport:
    command: str
    seed: int | None
    instances: tuple[InstanceReport, ...] = ()
    checks: tuple[CheckResult, ...] = ()
    wall_time: float = 0.0
    metrics: dict = field(default_factory=dict)
    schema: int = 1

    @property
    def passed(self) -> bool:
        """False on any failed instance or check, and on a campaign in which no instance passed."""
        summary = self.summary()
        if summary["failed"] or (self.instances and not summary["passed"]):
            return False
        return all(c.passed or c.expected_fail for c in self.checks)

    def summary(self) -> dict:
        return {
            "instances": len(self.instances),
            "skipped": sum(r.skipped is not None for r in self.instances),
            "failed": sum(r.failed for r in self.instances),
            "passed": sum(r.passed for r in self.instances),
        }

    def asdict(self) -> dict:
        return {
            "schema": self.schema,
            "command": self.command,
            "seed": self.seed,
            "pass": self.passed,
            "summary": self.summary(),
            "checks": [check.asdict() for check in self.checks],
            "instances": [r.asdict() for r in sorted(self.instances, key=lambda r: r.index)],
            "metrics": dict(sorted(self.metrics.items())),
            "wall_time": self.wall_time,
        }
