import math
from abc import ABC, abstractmethod
from logging import Logger
from typing import Any

from specsetlab.compiler.mapper import DictToInstanceMapper
from specsetlab.geometry.tessellation import check_family
from specsetlab.operators.operator_core import (
    is_spectral,
    poles_in_domain,
    spectrum_margin,
)
from specsetlab.types import Config, DiskKind, ProblemInstance
from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import (
    InstanceHypothesisError,
    InvalidFieldValueError,
    MissingRequiredFieldError,
    ResolventAtSpectrumError,
)

REQUIRED_FIELDS = ("matrix", "disks", "function")
DISK_KINDS = tuple(kind.value for kind in DiskKind)


class AbstractValidator(ABC):
    """
    Abstract base class for validators.
    """

    @abstractmethod
    def __init__(self, loglevel: int | str, config: Config, *args, **kwargs):
        """
        Initializes the AbstractValidator.

        Args:
            loglevel (int | str): The log level for the logger.
            config (Config): The configuration object.
        """
        self.logger: Logger = get_logger(__name__, loglevel)
        self.config: Config = config

    @abstractmethod
    def validate(self, spec_dict: dict) -> None:
        """
        Validates the given instance dictionary.

        Args:
            spec_dict (dict): The dictionary to be validated.
        """

    @abstractmethod
    def __repr__(self) -> str:
        return ""


class DummyValidator(AbstractValidator):
    """
    A validator accepting everything, for testing purposes.
    """

    def __init__(self, loglevel: int | str, config: Config, *args, **kwargs):
        super().__init__(loglevel, config)
        self.logger.debug("Init DummyValidator")

    def validate(self, spec_dict: dict) -> None:
        self.logger.debug("Validate")

    def __repr__(self) -> str:
        return "DummyValidator()"


class InstanceSchemaValidator(AbstractValidator):
    """
    Validator for the instance JSON layout.

    Checks structure and value types before the mapper builds numpy arrays, so that malformed
    files fail with a message naming the offending field.
    """

    def __init__(self, loglevel: int | str, config: Config, *args, **kwargs):
        super().__init__(loglevel, config)
        self.logger.debug("Init InstanceSchemaValidator")

    def validate(self, spec_dict: dict) -> None:
        """
        Validates the given instance dictionary.

        Args:
            spec_dict (dict): The dictionary representation of an instance.

        Raises:
            MissingRequiredFieldError: If a required field is missing.
            InvalidFieldValueError: If a field has an invalid value.
        """
        self.logger.debug("Validating instance dictionary")
        for name in REQUIRED_FIELDS:
            if name not in spec_dict:
                raise MissingRequiredFieldError(name)
        self._validate_matrix(spec_dict["matrix"])
        self._validate_disks(spec_dict["disks"])
        self._validate_function(spec_dict["function"], "function")
        if spec_dict.get("seed") is not None and not isinstance(spec_dict["seed"], int):
            raise InvalidFieldValueError("seed", spec_dict["seed"], "must be an integer")
        self.logger.debug("Instance dictionary validation completed successfully")

    def _validate_number_grid(self, grid: Any, n: int, field_path: str) -> None:
        if not isinstance(grid, list) or len(grid) != n:
            raise InvalidFieldValueError(field_path, grid, f"must be a list of {n} rows")
        for i, row in enumerate(grid):
            if not isinstance(row, list) or len(row) != n:
                raise InvalidFieldValueError(f"{field_path}[{i}]", row, f"must have {n} entries")
            for value in row:
                if not _is_real(value):
                    raise InvalidFieldValueError(f"{field_path}[{i}]", value, "must be finite numbers")

    def _validate_matrix(self, matrix: Any) -> None:
        if not isinstance(matrix, dict):
            raise InvalidFieldValueError("matrix", matrix, "must be an object")
        for name in ("n", "re"):
            if name not in matrix:
                raise MissingRequiredFieldError(name, "matrix")
        n = matrix["n"]
        if not isinstance(n, int) or n < 1:
            raise InvalidFieldValueError("matrix.n", n, "must be a positive integer")
        self._validate_number_grid(matrix["re"], n, "matrix.re")
        if "im" in matrix:
            self._validate_number_grid(matrix["im"], n, "matrix.im")

    def _validate_disks(self, disks: Any) -> None:
        if not isinstance(disks, list) or not disks:
            raise InvalidFieldValueError("disks", disks, "must be a non-empty list")
        for j, disk in enumerate(disks):
            path = f"disks[{j}]"
            if not isinstance(disk, dict):
                raise InvalidFieldValueError(path, disk, "must be an object")
            kind = disk.get("kind")
            if kind not in DISK_KINDS:
                raise InvalidFieldValueError(f"{path}.kind", kind, f"must be one of {DISK_KINDS}")
            match kind:
                case "halfplane":
                    if "theta" not in disk:
                        raise MissingRequiredFieldError("theta", path)
                    if not _is_real(disk["theta"]):
                        raise InvalidFieldValueError(f"{path}.theta", disk["theta"])
                    if "anchor" in disk and not _is_point(disk["anchor"]):
                        raise InvalidFieldValueError(f"{path}.anchor", disk["anchor"], "must be [re, im]")
                case _:
                    for name in ("center", "radius"):
                        if name not in disk:
                            raise MissingRequiredFieldError(name, path)
                    if not _is_point(disk["center"]):
                        raise InvalidFieldValueError(f"{path}.center", disk["center"], "must be [re, im]")
                    if not _is_real(disk["radius"]) or disk["radius"] <= 0:
                        raise InvalidFieldValueError(f"{path}.radius", disk["radius"], "must be positive")

    def _validate_function(self, function: Any, field_path: str) -> None:
        if not isinstance(function, dict):
            raise InvalidFieldValueError(field_path, function, "must be an object")
        if "blocks" in function:
            blocks = function["blocks"]
            if not isinstance(blocks, list) or not blocks:
                raise InvalidFieldValueError(f"{field_path}.blocks", blocks, "must be a non-empty list")
            for i, row in enumerate(blocks):
                if not isinstance(row, list) or len(row) != len(blocks):
                    raise InvalidFieldValueError(f"{field_path}.blocks[{i}]", row, "block must be square")
                for j, entry in enumerate(row):
                    self._validate_function(entry, f"{field_path}.blocks[{i}][{j}]")
            return
        if "num" not in function:
            raise MissingRequiredFieldError("num", field_path)
        for name in ("num", "den"):
            coeffs = function.get(name, [[1.0, 0.0]])
            if not isinstance(coeffs, list) or not coeffs or not all(_is_point(c) for c in coeffs):
                raise InvalidFieldValueError(f"{field_path}.{name}", coeffs, "must be a list of [re, im]")

    def __repr__(self) -> str:
        return "InstanceSchemaValidator()"


class HypothesisValidator(AbstractValidator):
    """
    Checks the hypotheses of a mapped instance: admissible disk family, every disk spectral for
    ``A``, spectrum inside ``X`` and no pole of ``f`` in ``X``.

    ``validate`` accepts the dictionary layout for symmetry with the other validators; the
    compiler calls :meth:`check` on the instance after the manipulators ran.
    """

    def __init__(self, loglevel: int | str, config: Config, spectral_tol: float = 1e-12, *args, **kwargs):
        super().__init__(loglevel, config)
        self.loglevel = loglevel
        self.spectral_tol = spectral_tol
        self.logger.debug("Init HypothesisValidator")

    def validate(self, spec_dict: dict) -> None:
        instance = DictToInstanceMapper(self.loglevel, self.config).map(spec_dict)
        self.check(instance)

    def check(self, instance: ProblemInstance) -> None:
        """
        Raises:
            InstanceHypothesisError: With the reason of the first violated hypothesis.
            DegenerateGeometryError: If the disk family itself is degenerate.
        """
        check_family(instance.disks)
        poles = poles_in_domain(instance.function, instance.disks)
        if poles:
            raise InstanceHypothesisError(f"pole on X: {poles[0]:.6g}")
        if not instance.function.is_bounded_at_infinity and all(
            D.contains_infinity for D in instance.disks
        ):
            raise InstanceHypothesisError("pole on X: infinity")
        for j, D in enumerate(instance.disks):
            try:
                spectral = is_spectral(instance.matrix, D, self.spectral_tol)
            except ResolventAtSpectrumError:
                spectral = False
            if not spectral:
                raise InstanceHypothesisError(f"disk {j} is not a spectral set for A")
        if spectrum_margin(instance.matrix, instance.disks) < 0:
            raise InstanceHypothesisError("spectrum of A is not contained in X")
        self.logger.debug(f"hypotheses hold for {instance.name or instance.kind}")

    def __repr__(self) -> str:
        return f"HypothesisValidator(spectral_tol={self.spectral_tol})"


def _is_real(value: Any) -> bool:
    return isinstance(value, (int, float)) and not isinstance(value, bool) and math.isfinite(value)


def _is_point(value: Any) -> bool:
    return isinstance(value, list) and len(value) == 2 and all(_is_real(v) for v in value)
