from abc import ABC, abstractmethod
from logging import Logger
from typing import Any

import numpy as np

from specsetlab.types import (
    Config,
    GeneralizedDisk,
    ProblemInstance,
    RationalFunction,
    RationalMatrixFunction,
    complex_from_json,
)
from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import InvalidFieldValueError


class Mapper(ABC):
    @abstractmethod
    def __init__(self, loglevel: int | str, config: Config, *args, **kwargs):
        self.logger: Logger = get_logger(__name__, loglevel)
        self.config: Config = config

    @abstractmethod
    def map(self, spec_dict: dict) -> Any:
        pass


class DictToInstanceMapper(Mapper):
    """
    Maps a validated instance dictionary to a ``ProblemInstance``.

    Layout::

        {"name": "...", "kind": "...", "seed": 7,
         "matrix": {"n": 2, "re": [[...], [...]], "im": [[...], [...]]},
         "disks": [{"kind": "disk", "center": [0, 0], "radius": 2.0}, ...],
         "function": {"num": [[re, im], ...], "den": [[re, im], ...]}}

    ``function`` may also be ``{"blocks": [[f_00, f_01], [f_10, f_11]]}``.
    """

    def __init__(self, loglevel: int | str, config: Config, *args, **kwargs):
        super().__init__(loglevel, config)
        self.logger.debug("Init DictToInstanceMapper")

    def map_matrix(self, matrix: dict) -> np.ndarray:
        re = np.asarray(matrix["re"], dtype=float)
        im = np.asarray(matrix.get("im", np.zeros_like(re)), dtype=float)
        return re + 1j * im

    def map_disks(self, disks: list[dict]) -> tuple[GeneralizedDisk, ...]:
        return tuple(GeneralizedDisk.from_dict(disk) for disk in disks)

    def map_function(self, function: dict) -> RationalMatrixFunction:
        if "blocks" in function:
            return RationalMatrixFunction(
                tuple(tuple(self._map_rational(f) for f in row) for row in function["blocks"])
            )
        return RationalMatrixFunction.scalar(self._map_rational(function))

    def _map_rational(self, function: dict) -> RationalFunction:
        num = tuple(complex_from_json(c) for c in function["num"])
        den = tuple(complex_from_json(c) for c in function.get("den", [[1.0, 0.0]]))
        return RationalFunction(num, den)

    def map(self, spec_dict: dict) -> ProblemInstance:
        """
        Args:
            spec_dict (dict): Instance dictionary, checked by ``InstanceSchemaValidator``.

        Returns:
            ProblemInstance: The mapped instance.

        Raises:
            InvalidFieldValueError: If ``matrix.n`` does not match the matrix rows.
        """
        A = self.map_matrix(spec_dict["matrix"])
        if A.shape[0] != spec_dict["matrix"]["n"]:
            raise InvalidFieldValueError("matrix.n", spec_dict["matrix"]["n"], f"matrix is {A.shape}")
        instance = ProblemInstance(
            matrix=A,
            disks=self.map_disks(spec_dict["disks"]),
            function=self.map_function(spec_dict["function"]),
            seed=spec_dict.get("seed"),
            kind=spec_dict.get("kind", "custom"),
            name=spec_dict.get("name", ""),
        )
        self.logger.debug(f"Mapped instance n={instance.n_dim}, {len(instance.disks)} disks")
        return instance

    def __repr__(self) -> str:
        return "DictToInstanceMapper()"
