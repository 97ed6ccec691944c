import json

import pytest

from specsetlab.compiler import Compiler


@pytest.fixture
def test_config(config):
    return config


@pytest.fixture
def mock_compiler(test_config):
    compiler = Compiler(test_config, loglevel="warning")
    return compiler


@pytest.fixture
def minimal_instance_dict():
    return {
        "name": "minimal",
        "matrix": {"n": 2, "re": [[0.5, 0.2], [0.0, -0.1]], "im": [[0.0, 0.1], [0.0, 0.0]]},
        "disks": [
            {"kind": "disk", "center": [0.0, 0.0], "radius": 1.0},
            {"kind": "halfplane", "anchor": [-0.5, 0.0], "theta": 0.0},
        ],
        "function": {"num": [[1.0, 0.0], [0.5, 0.0]], "den": [[3.0, 0.0], [1.0, 0.0]]},
    }


@pytest.fixture
def block_instance_dict(minimal_instance_dict):
    f = minimal_instance_dict["function"]
    one = {"num": [[1.0, 0.0]]}
    minimal_instance_dict["function"] = {"blocks": [[f, one], [one, f]]}
    return minimal_instance_dict


@pytest.fixture
def annulus_instance_dict(annulus_instance_path):
    return json.loads(annulus_instance_path.read_text())
