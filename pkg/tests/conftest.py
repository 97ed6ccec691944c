import math
from pathlib import Path

import numpy as np
import pytest

from specsetlab.types import GeneralizedDisk, ProblemInstance, RationalFunction
from specsetlab.utils.load_config import load_config

INSTANCE_DIR = Path("tests/data/instances")


@pytest.fixture
def config():
    config = load_config(config_path="test_config", config_dir="tests/data/config")
    return config


@pytest.fixture
def default_config():
    return load_config()


@pytest.fixture
def instance_dir():
    return INSTANCE_DIR


@pytest.fixture
def annulus_instance_path():
    return INSTANCE_DIR / "annulus_jordan.json"


@pytest.fixture
def campaign_instance_path():
    return INSTANCE_DIR / "campaign.json"


@pytest.fixture
def unit_disk():
    return GeneralizedDisk.interior(0.0, 1.0)


@pytest.fixture
def annulus_disks():
    """``{1/2 <= |z| <= 2}``, i.e. ``R = 2``."""
    return GeneralizedDisk.interior(0.0, 2.0), GeneralizedDisk.exterior(0.0, 0.5)


@pytest.fixture
def sector_disks():
    """Symmetric sector of half-opening ``pi/6`` around the positive real axis."""
    theta = math.pi / 3
    return GeneralizedDisk.half_plane(-theta), GeneralizedDisk.half_plane(theta)


@pytest.fixture
def strip_disks():
    return (
        GeneralizedDisk.half_plane(-math.pi / 2, 1j),
        GeneralizedDisk.half_plane(math.pi / 2, -1j),
    )


@pytest.fixture
def lens_disks():
    return GeneralizedDisk.interior(-0.6, 1.0), GeneralizedDisk.interior(0.6, 1.0)


@pytest.fixture
def three_disks():
    return (
        GeneralizedDisk.interior(0.0, 1.5),
        GeneralizedDisk.interior(1.0, 1.5),
        GeneralizedDisk.exterior(0.5 - 1.2j, 0.6),
    )


@pytest.fixture
def jordan_matrix():
    """``[[1, 1.5], [0, 1]]``: both annulus disks of ``R = 2`` are spectral sets."""
    return np.array([[1.0, 1.5], [0.0, 1.0]], dtype=complex)


@pytest.fixture
def small_matrix():
    return np.array([[0.2, 0.1j], [0.0, -0.3]], dtype=complex)


@pytest.fixture
def annulus_instance(annulus_disks, jordan_matrix):
    return ProblemInstance(
        matrix=jordan_matrix,
        disks=annulus_disks,
        function=RationalFunction((-1.0, 1.0)),
        kind="annulus",
        name="annulus_jordan",
    )
