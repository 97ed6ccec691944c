from dataclasses import replace

import pytest

from specsetlab.compiler.manipulators import (
    DropRedundantDisksManipulator,
    DummyManipulator,
    EnlargeDisksManipulator,
)
from specsetlab.types import GeneralizedDisk
from specsetlab.utils.exceptions import ExteriorRadiusUnderflowError


def test_dummy_manipulator(test_config, annulus_instance):
    manipulator = DummyManipulator("debug", test_config)
    assert manipulator.manipulate(annulus_instance) is annulus_instance
    assert str(manipulator) == "DummyManipulator()"


def test_enlarge_disks_manipulator(test_config, annulus_instance):
    manipulator = EnlargeDisksManipulator("debug", test_config, epsilon=0.1)
    enlarged = manipulator.manipulate(annulus_instance)
    assert enlarged.disks[0].radius == pytest.approx(2.1)
    assert enlarged.disks[1].radius == pytest.approx(0.4)
    # the input stays untouched
    assert annulus_instance.disks[0].radius == 2.0
    assert enlarged.matrix is annulus_instance.matrix
    assert str(manipulator) == "EnlargeDisksManipulator(epsilon=0.1)"


def test_enlarge_disks_manipulator_underflow(test_config, annulus_instance):
    with pytest.raises(ExteriorRadiusUnderflowError):
        EnlargeDisksManipulator("debug", test_config, epsilon=0.5).manipulate(annulus_instance)


def test_drop_redundant_disks_manipulator(test_config, annulus_instance):
    padded = replace(
        annulus_instance,
        disks=annulus_instance.disks + (GeneralizedDisk.interior(0.0, 3.0),),
    )
    manipulator = DropRedundantDisksManipulator("debug", test_config)
    assert manipulator.manipulate(padded).disks == annulus_instance.disks
    assert manipulator.manipulate(annulus_instance).disks == annulus_instance.disks
