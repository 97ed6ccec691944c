"""
The four subcommands. Each returns a ``RunReport``; writing stdout and choosing the exit code is
left to :func:`specsetlab.cli.main`.
"""

import json
import time
from dataclasses import replace
from pathlib import Path
from typing import Sequence

import numpy as np

from specsetlab.bounds.curves import bound_curve, write_bound_curve
from specsetlab.bounds.bounds import paulsen_crossovers
from specsetlab.cli.campaigns import CampaignRunner
from specsetlab.compiler.repos import JsonRepository
from specsetlab.geometry.export import export_geometry
from specsetlab.geometry.tessellation import build_tessellation
from specsetlab.types import CheckResult, Config, GeneralizedDisk, RunReport
from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import FileNotFound, InstanceSchemaError, InvalidValue

# thm1_upper stays below shields_bound up to the root of R^3 - 2R^2 - 3R - 2
ORDERING_LIMIT = 3.0


def cmd_bounds(
    config: Config,
    loglevel: int | str,
    out: Path | str,
    rmin: float | None = None,
    rmax: float | None = None,
    steps: int | None = None,
) -> RunReport:
    """
    Write the annulus bound curves as CSV and check their ordering.

    Raises:
        InvalidValue: Unless ``1 < rmin < rmax``.
    """
    logger = get_logger(__name__, loglevel)
    started = time.perf_counter()
    bounds = config.bounds
    rmin = bounds.rmin if rmin is None else rmin
    rmax = bounds.rmax if rmax is None else rmax
    steps = bounds.steps if steps is None else steps
    samples = bound_curve(rmin, rmax, steps)
    crossovers = paulsen_crossovers()
    path = write_bound_curve(samples, out, crossovers)
    logger.info(f"bound curves written to {path}")

    R = np.array([s.R for s in samples])
    shields = np.array([s.shields for s in samples])
    upper = np.array([s.thm1_upper for s in samples])
    lower = np.array([max(s.gamma1, s.gamma) for s in samples])
    ordered = R <= ORDERING_LIMIT
    checks = [
        CheckResult(
            "lower_below_upper",
            float(np.max(lower - upper)),
            0.0,
            bool(np.all(lower <= upper)),
        ),
    ]
    if np.any(ordered):
        gap = float(np.max(upper[ordered] - shields[ordered]))
        checks.append(CheckResult("upper_below_shields", gap, 0.0, gap <= 0.0))
    return RunReport(
        command="bounds",
        seed=None,
        checks=tuple(checks),
        wall_time=time.perf_counter() - started,
        metrics={
            "rows": len(samples),
            "out": str(path),
            **{f"crossover_{name}": value for name, value in crossovers.items()},
        },
    )


def _campaign(
    command: str,
    config: Config,
    loglevel: int | str,
    instance: Path | str | None,
    random: str | None,
    seed: int,
    count: int,
    block_size: int | None,
    check_hypotheses: bool,
) -> RunReport:
    started = time.perf_counter()
    runner = CampaignRunner(loglevel, config)
    checks = runner.verify_checks if command == "verify" else runner.kernel_checks
    match instance, random:
        case None, None:
            raise InvalidValue("instance", None, "pass --instance or --random")
        case str() | Path(), None:
            items = JsonRepository(instance, loglevel, config).load_all()
            source = runner.dict_source(items, check_hypotheses)
            count = len(items)
            run_seed = None
        case None, str():
            if count < 1:
                raise InvalidValue("count", count, "must be positive")
            source = runner.random_source(random, seed, block_size)
            run_seed = seed
        case _:
            raise InvalidValue("instance", instance, "--instance and --random are exclusive")
    reports = runner.run(count, source, checks)
    return RunReport(
        command=command,
        seed=run_seed,
        instances=reports,
        wall_time=time.perf_counter() - started,
        metrics=_aggregate(reports),
    )


def _aggregate(reports) -> dict:
    metrics = {}
    for key in ("defect", "ratio"):
        values = [r.metrics[key] for r in reports if key in r.metrics]
        if values:
            metrics[f"max_{key}"] = float(max(values))
    values = [v for r in reports for k, v in r.metrics.items() if k.startswith("min_eigenvalue")]
    if values:
        metrics["min_eigenvalue"] = float(min(values))
    return metrics


def cmd_verify(
    config: Config,
    loglevel: int | str,
    instance: Path | str | None = None,
    random: str | None = None,
    seed: int = 0,
    count: int = 1,
    block_size: int | None = None,
) -> RunReport:
    """
    Decompose ``f(A)`` and check the spectral bounds on one file or a seeded random campaign.

    Instances violating their hypotheses are listed as skipped with the reason.
    """
    return _campaign("verify", config, loglevel, instance, random, seed, count, block_size, True)


def cmd_kernels(
    config: Config,
    loglevel: int | str,
    instance: Path | str | None = None,
    random: str | None = None,
    seed: int = 0,
    count: int = 1,
    samples: int | None = None,
) -> RunReport:
    """
    Positivity and total mass of the Poisson kernel of every disk.

    Hypotheses are not enforced: a disk that is not spectral shows up as an expected failure.
    """
    if samples is not None:
        if samples < 1:
            raise InvalidValue("samples", samples, "must be positive")
        config = replace(config, campaign=replace(config.campaign, kernel_samples=samples))
    return _campaign("kernels", config, loglevel, instance, random, seed, count, None, False)


def load_disks(path: Path | str) -> tuple[GeneralizedDisk, ...]:
    """Disks from a JSON list, a ``{"disks": [...]}`` object or an instance file."""
    path = Path(path)
    if not path.exists():
        raise FileNotFound(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as error:
        raise InstanceSchemaError(f"{path} is not valid JSON ({error.msg})")
    match data:
        case {"disks": list(items)} | list(items):
            return tuple(GeneralizedDisk.from_dict(item) for item in items)
        case _:
            raise InstanceSchemaError(f"{path} holds no list of disks")


def cmd_tessellate(
    config: Config,
    loglevel: int | str,
    disks: Path | str,
    svg: Path | str | None = None,
    json_out: Path | str | None = None,
    viewport: Sequence[float] | None = None,
) -> RunReport:
    """
    Build the tessellation of the disks and export it.

    Raises:
        DegenerateGeometryError: For nested, duplicate or empty-interior families.
    """
    logger = get_logger(__name__, loglevel)
    started = time.perf_counter()
    geometry = config.geometry
    tess = build_tessellation(
        load_disks(disks), abs_tol=geometry.abs_tol, tangency_tol=geometry.tangency_tol
    )
    viewport = tuple(viewport if viewport is not None else config.export.viewport)
    written = {}
    for fmt, target in (("svg", svg), ("json", json_out)):
        if target is None:
            continue
        target = Path(target)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_bytes(
            export_geometry(tess, fmt, viewport, config.export.samples_per_arc)
        )
        logger.info(f"wrote {fmt} to {target}")
        written[fmt] = str(target)
    proper = sum(not piece.arc.is_closed for piece in tess.median_arcs)
    return RunReport(
        command="tessellate",
        seed=None,
        wall_time=time.perf_counter() - started,
        metrics={
            "disks": len(tess.disks),
            "boundary_arcs": len(tess.boundary_arcs),
            "median_arcs": len(tess.median_arcs),
            "proper_median_arcs": proper,
            "vertices": len(tess.vertices),
            **written,
        },
    )
