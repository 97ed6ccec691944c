"""
Per-instance verification and kernel checks, and the bounded worker pool running them.

Every worker builds its own instance and returns an ``InstanceReport``; nothing is shared
between workers, and the reports are sorted by index before they are returned.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from logging import Logger
from typing import Callable, Sequence

import numpy as np

from specsetlab.bounds.bounds import h_annulus, thm1_upper
from specsetlab.compiler import Compiler
from specsetlab.compiler.repos import DictRepository, RandomRepository
from specsetlab.geometry.sphere_geometry import boundary_arc
from specsetlab.operators.cauchy_decomposition import decompose, poisson_kernel, poisson_weight
from specsetlab.operators.operator_core import is_spectral, resolvent, spectral_norm
from specsetlab.operators.quadrature import Measure, integrate_kernel
from specsetlab.types import (
    CheckResult,
    Config,
    DiskKind,
    GeneralizedDisk,
    InstanceReport,
    ProblemInstance,
    RationalFunction,
    is_infinite,
)
from specsetlab.utils import digest, get_logger
from specsetlab.utils.exceptions import (
    DegenerateGeometryError,
    InstanceHypothesisError,
    PoleOnDomainError,
    ResolventAtSpectrumError,
    SpecSetException,
    UnboundedOnDomainError,
)

InstanceSource = Callable[[int], ProblemInstance]


def _check(name: str, value: float, threshold: float, expected_fail: bool = False) -> CheckResult:
    return CheckResult(
        name=name,
        value=float(value),
        threshold=float(threshold),
        passed=bool(value <= threshold),
        expected_fail=expected_fail,
    )


def annulus_ratio(disks: Sequence[GeneralizedDisk]) -> float | None:
    """``R`` when the family is a concentric annulus ``{rho_1 <= |z - c| <= rho_2}``."""
    if len(disks) != 2:
        return None
    kinds = {D.kind for D in disks}
    if kinds != {DiskKind.INTERIOR, DiskKind.EXTERIOR}:
        return None
    inner = next(D for D in disks if D.kind is DiskKind.EXTERIOR)
    outer = next(D for D in disks if D.kind is DiskKind.INTERIOR)
    if abs(inner.center - outer.center) > 1e-12 * outer.radius or inner.radius >= outer.radius:
        return None
    return math.sqrt(outer.radius / inner.radius)


class CampaignRunner:
    """
    Runs ``verify`` or ``kernels`` checks over a family of instances.

    Args:
        loglevel (int | str): The log level.
        config (Config): The configuration object; ``campaign``, ``quadrature``, ``sup_norm``
            and ``decomposition`` blocks are read.
    """

    def __init__(self, loglevel: int | str, config: Config, *args, **kwargs):
        self.logger: Logger = get_logger(__name__, loglevel)
        self.loglevel = loglevel
        self.config = config
        self.workers = max(1, config.campaign.workers)

    def __repr__(self) -> str:
        return f"CampaignRunner(workers={self.workers})"

    # instance sources

    def random_source(self, kind: str, seed: int, block_size: int | None = None) -> InstanceSource:
        campaign = self.config.campaign

        def source(index: int) -> ProblemInstance:
            repo = RandomRepository(
                self.loglevel,
                self.config,
                kind=kind,
                n_dim=campaign.n_dim,
                seed=seed + index,
                radius=campaign.radius,
                theta=campaign.theta,
                degree=campaign.degree,
                block_size=block_size or campaign.block_size,
            )
            return Compiler(self.config, self.loglevel, repo=repo).compile()

        return source

    def dict_source(self, instances: Sequence[dict], check_hypotheses: bool = True) -> InstanceSource:
        def source(index: int) -> ProblemInstance:
            repo = DictRepository(instances[index], self.loglevel, self.config)
            compiler = Compiler(self.config, self.loglevel, repo=repo)
            if not check_hypotheses:
                compiler.hypothesis_validator = None
            return compiler.compile()

        return source

    # checks

    def verify_checks(self, instance: ProblemInstance) -> tuple[tuple[CheckResult, ...], dict]:
        """
        Decompose ``f(A)`` and check the identity, the Poisson part and the spectral bounds.
        """
        quadrature = self.config.quadrature
        decomposition = self.config.decomposition
        sup = self.config.sup_norm
        campaign = self.config.campaign
        report = decompose(
            instance.function,
            instance.matrix,
            instance.disks,
            tol=quadrature.tolerance,
            touch_margin=decomposition.touch_margin,
            epsilon_factor=decomposition.epsilon_factor,
            sup_norm_kwargs={
                "samples": sup.samples,
                "rel_tol": sup.rel_tol,
                "max_refinements": sup.max_refinements,
            },
            max_panels=quadrature.max_panels,
            initial_panels=quadrature.initial_panels,
        )
        n = len(instance.disks)
        scale = report.sup_norm
        slack = campaign.bound_slack
        checks = [
            _check("defect", report.defect, campaign.defect_tol * max(1.0, report.norm_fA)),
            _check("poisson_part", report.norm_gp, n * scale + slack),
            _check("spectral_bound", report.norm_fA, report.bound * scale + slack),
        ]
        R = annulus_ratio(instance.disks)
        if R is not None:
            checks.append(_check("annulus_residual", report.norm_gr, h_annulus(R) * scale + slack))
            checks.append(_check("annulus_bound", report.norm_fA, thm1_upper(R) * scale + slack))
        metrics = {
            **report.asdict(),
            "ratio": report.norm_fA / scale if scale > 0 else math.inf,
        }
        return tuple(checks), metrics

    def _boundary_samples(self, D: GeneralizedDisk, count: int) -> list[complex]:
        arc = boundary_arc(D)
        points = (arc.point(t) for t in arc.sample(count))
        return [z for z in points if not is_infinite(z)]

    def kernel_checks(self, instance: ProblemInstance) -> tuple[tuple[CheckResult, ...], dict]:
        """
        Per disk: smallest eigenvalue of ``mu`` at boundary samples and ``||int mu ds - I||``.

        A disk that is not spectral for ``A`` is expected to fail the positivity check; the
        result is kept in the report and flagged instead of counted as a failure.
        """
        campaign = self.config.campaign
        quadrature = self.config.quadrature
        A = instance.matrix
        identity = np.eye(A.shape[0])
        one = RationalFunction.constant(1.0)
        checks, metrics = [], {}
        for j, D in enumerate(instance.disks):
            try:
                spectral = is_spectral(A, D)
            except ResolventAtSpectrumError:
                spectral = False
            smallest = min(
                float(np.linalg.eigvalsh(0.5 * (mu + mu.conj().T))[0])
                for mu in (
                    poisson_kernel(z, A, D).value
                    for z in self._boundary_samples(D, campaign.kernel_samples)
                )
            )
            checks.append(
                _check(f"psd[{j}]", -smallest, campaign.psd_tol, expected_fail=not spectral)
            )
            weight = poisson_weight(A, D)

            def mu(sigma: complex, weight=weight) -> np.ndarray:
                R = resolvent(A, sigma)
                return R @ weight @ R.conj().T

            mass = integrate_kernel(
                one,
                boundary_arc(D),
                mu,
                Measure.ARCLENGTH,
                quadrature.tolerance,
                quadrature.max_panels,
                quadrature.initial_panels,
            )
            checks.append(_check(f"identity[{j}]", spectral_norm(mass.value - identity), campaign.identity_tol))
            metrics[f"min_eigenvalue[{j}]"] = smallest
            metrics[f"spectral[{j}]"] = spectral
        return tuple(checks), metrics

    # running

    def run_one(
        self,
        index: int,
        source: InstanceSource,
        checks: Callable[[ProblemInstance], tuple[tuple[CheckResult, ...], dict]],
    ) -> InstanceReport:
        try:
            instance = source(index)
        except (InstanceHypothesisError, DegenerateGeometryError) as error:
            return InstanceReport(index=index, digest="", kind="", seed=None, skipped=_reason(error))
        base = dict(index=index, digest=digest(instance.asdict()), kind=instance.kind, seed=instance.seed)
        try:
            results, metrics = checks(instance)
        except (PoleOnDomainError, UnboundedOnDomainError) as error:
            return InstanceReport(**base, skipped=_reason(error))
        except SpecSetException as error:
            self.logger.error(f"instance {index} failed: {error}")
            return InstanceReport(**base, error=str(error))
        report = InstanceReport(**base, checks=results, metrics=metrics)
        if not report.passed:
            self.logger.warning(f"instance {index} failed: {[c.name for c in results if not c.passed]}")
        return report

    def run(
        self,
        count: int,
        source: InstanceSource,
        checks: Callable[[ProblemInstance], tuple[tuple[CheckResult, ...], dict]],
    ) -> tuple[InstanceReport, ...]:
        """Run ``checks`` on ``count`` instances with at most ``workers`` threads."""
        self.logger.info(f"running {count} instances on {self.workers} workers")
        with ThreadPoolExecutor(max_workers=self.workers) as pool:
            reports = list(pool.map(lambda i: self.run_one(i, source, checks), range(count)))
        return tuple(sorted(reports, key=lambda r: r.index))


def _reason(error: Exception) -> str:
    match error:
        case PoleOnDomainError() | UnboundedOnDomainError():
            return "pole on X"
        case InstanceHypothesisError() if error.reason.startswith("pole on X"):
            return "pole on X"
        case InstanceHypothesisError():
            return error.reason
        case _:
            return str(error)
