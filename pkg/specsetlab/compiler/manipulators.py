import logging
from abc import ABC, abstractmethod
from dataclasses import replace

from specsetlab.geometry.tessellation import drop_redundant_disks
from specsetlab.operators.operator_core import enlarge_disks
from specsetlab.types import Config, ProblemInstance
from specsetlab.utils import get_logger


class Manipulator(ABC):
    """
    Abstract base class for manipulators.
    """

    @abstractmethod
    def __init__(self, loglevel: int | str, config: Config, *args, **kwargs):
        """
        Initialize the Manipulator.

        Args:
            loglevel (int | str): The log level.
            config (Config): The configuration object.
        """
        self.config: Config = config
        self.logger: logging.Logger = get_logger(__name__, loglevel)

    @abstractmethod
    def manipulate(self, instance: ProblemInstance) -> ProblemInstance:
        """
        Return a transformed copy of the instance.

        Args:
            instance (ProblemInstance): The mapped instance.

        Returns:
            ProblemInstance: The manipulated instance.
        """

    @abstractmethod
    def __repr__(self) -> str:
        return ""


class DummyManipulator(Manipulator):
    def __init__(self, loglevel: int | str, config: Config, *args, **kwargs):
        super().__init__(loglevel, config)
        self.logger.debug("Init DummyManipulator")

    def manipulate(self, instance: ProblemInstance) -> ProblemInstance:
        self.logger.debug("Manipulate")
        return instance

    def __repr__(self) -> str:
        return "DummyManipulator()"


class EnlargeDisksManipulator(Manipulator):
    """
    Replaces every disk by its ``epsilon``-neighbourhood.

    A superset of a spectral set is spectral, so the hypotheses survive; instances whose spectrum
    lies on the boundary of ``X`` become admissible for the decomposition.
    """

    def __init__(self, loglevel: int | str, config: Config, epsilon: float = 1e-6, *args, **kwargs):
        super().__init__(loglevel, config)
        self.epsilon = epsilon
        self.logger.debug(f"Init EnlargeDisksManipulator with epsilon={epsilon}")

    def manipulate(self, instance: ProblemInstance) -> ProblemInstance:
        self.logger.debug(f"Enlarge {len(instance.disks)} disks by {self.epsilon}")
        return replace(instance, disks=enlarge_disks(instance.disks, self.epsilon))

    def __repr__(self) -> str:
        return f"EnlargeDisksManipulator(epsilon={self.epsilon})"


class DropRedundantDisksManipulator(Manipulator):
    """Removes disks containing another disk of the family; ``X`` is unchanged."""

    def __init__(self, loglevel: int | str, config: Config, *args, **kwargs):
        super().__init__(loglevel, config)
        self.tangency_tol = config.geometry.tangency_tol
        self.logger.debug("Init DropRedundantDisksManipulator")

    def manipulate(self, instance: ProblemInstance) -> ProblemInstance:
        disks = drop_redundant_disks(instance.disks, self.tangency_tol)
        if len(disks) != len(instance.disks):
            self.logger.info(f"dropped {len(instance.disks) - len(disks)} redundant disks")
        return replace(instance, disks=disks)

    def __repr__(self) -> str:
        return "DropRedundantDisksManipulator()"
