import math

import pytest

from specsetlab.cli.campaigns import CampaignRunner, annulus_ratio
from specsetlab.compiler.repos import JsonRepository
from specsetlab.types import GeneralizedDisk
from specsetlab.utils.exceptions import InvalidValue


def test_runner_init(runner):
    assert repr(runner) == "CampaignRunner(workers=2)"


def test_annulus_ratio(annulus_disks, lens_disks):
    assert annulus_ratio(annulus_disks) == pytest.approx(2.0)
    assert annulus_ratio(annulus_disks[::-1]) == pytest.approx(2.0)
    assert annulus_ratio(lens_disks) is None
    shifted = (GeneralizedDisk.interior(0.0, 2.0), GeneralizedDisk.exterior(0.1, 0.5))
    assert annulus_ratio(shifted) is None


def test_verify_annulus_file(runner, config, annulus_instance_path):
    items = JsonRepository(annulus_instance_path, "warning", config).load_all()
    (report,) = runner.run(1, runner.dict_source(items), runner.verify_checks)
    names = [check.name for check in report.checks]
    assert names == [
        "defect",
        "poisson_part",
        "spectral_bound",
        "annulus_residual",
        "annulus_bound",
    ]
    assert report.passed
    assert report.kind == "annulus"
    assert report.metrics["ratio"] == pytest.approx(0.5, rel=1e-4)
    assert len(report.digest) == 64


def test_campaign_file_skips_pole_in_domain(runner, config, campaign_instance_path):
    items = JsonRepository(campaign_instance_path, "warning", config).load_all()
    reports = runner.run(len(items), runner.dict_source(items), runner.verify_checks)
    assert [r.index for r in reports] == [0, 1]
    assert reports[0].skipped == "pole on X"
    assert reports[1].skipped is None
    assert reports[1].passed
    assert reports[1].metrics["norm_fA"] == pytest.approx(0.0625)


def test_kernels_flag_non_spectral_disk(runner, config, instance_dir):
    items = JsonRepository(instance_dir / "non_spectral.json", "warning", config).load_all()
    source = runner.dict_source(items, check_hypotheses=False)
    (report,) = runner.run(1, source, runner.kernel_checks)
    psd, identity = report.checks
    assert psd.name == "psd[0]"
    assert psd.expected_fail
    assert not psd.passed
    assert identity.passed
    assert report.passed
    assert report.metrics["spectral[0]"] is False


def test_kernels_on_lens(runner, config, instance_dir):
    items = JsonRepository(instance_dir / "lens.json", "warning", config).load_all()
    (report,) = runner.run(1, runner.dict_source(items), runner.kernel_checks)
    assert [c.name for c in report.checks] == ["psd[0]", "identity[0]", "psd[1]", "identity[1]"]
    assert all(c.passed for c in report.checks)
    assert not any(c.expected_fail for c in report.checks)
    assert report.metrics["min_eigenvalue[0]"] > 0.0


@pytest.mark.parametrize("kind", ["annulus", "sector", "strip", "lens", "n_disks3"])
def test_random_verify_campaign(runner, kind):
    reports = runner.run(2, runner.random_source(kind, seed=11), runner.verify_checks)
    assert [r.seed for r in reports] == [11, 12]
    assert all(r.skipped is None for r in reports)
    assert all(r.passed for r in reports)


def test_random_campaign_is_deterministic(runner, config):
    first = runner.run(3, runner.random_source("lens", seed=5), runner.verify_checks)
    second = CampaignRunner("warning", config).run(
        3, runner.random_source("lens", seed=5), runner.verify_checks
    )
    assert [r.digest for r in first] == [r.digest for r in second]
    assert [r.metrics["norm_fA"] for r in first] == [r.metrics["norm_fA"] for r in second]


def test_random_source_rejects_unknown_kind(runner):
    with pytest.raises(InvalidValue):
        runner.run(1, runner.random_source("hexagon", seed=0), runner.verify_checks)


@pytest.mark.slow
@pytest.mark.parametrize("kind", ["annulus", "sector", "strip", "lens", "n_disks4"])
def test_acceptance_campaign(runner, kind):
    reports = runner.run(20, runner.random_source(kind, seed=0, block_size=2), runner.verify_checks)
    assert all(r.passed for r in reports)
    assert max(r.metrics["defect"] for r in reports) < 1e-7


def test_three_disk_block_campaign(runner):
    reports = runner.run(3, runner.random_source("n_disks3", seed=0, block_size=2), runner.verify_checks)
    assert [r.seed for r in reports] == [0, 1, 2]
    assert all(r.passed for r in reports)
    assert max(r.metrics["defect"] for r in reports) < 1e-7
    assert max(r.metrics["ratio"] for r in reports) <= 3.0 + 2.0 * math.sqrt(3.0) + 1e-6


def test_computation_errors_fail_the_instance(runner, config):
    config.quadrature.max_panels = 1
    config.quadrature.tolerance = 1e-14
    reports = runner.run(2, runner.random_source("annulus", seed=7), runner.verify_checks)
    for report in reports:
        assert report.skipped is None
        assert "did not converge" in report.error
        assert report.failed
        assert not report.passed
        assert report.checks == ()
