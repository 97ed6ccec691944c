import json
from abc import ABC, abstractmethod
from logging import Logger
from pathlib import Path
from typing import Any, Dict

from specsetlab.operators.random_instances import random_instance
from specsetlab.types import Config
from specsetlab.utils import get_logger
from specsetlab.utils.exceptions import FileNotFound, InstanceSchemaError, InvalidValue


class Repository(ABC):
    """
    Abstract base class for instance sources.
    """

    @abstractmethod
    def __init__(self, loglevel: int | str, config: Config, *args, **kwargs):
        """
        Initialize the Repository.

        Args:
            loglevel (int | str): The log level.
            config (Config): The configuration object.
        """
        self.logger: Logger = get_logger(__name__, loglevel)
        self.config: Config = config

    def check_dir(self, dir: Path | str) -> Path:
        """
        Check that the given file exists.

        Args:
            dir (Path | str): Path of the instance file.

        Returns:
            Path: The path as a ``Path`` object.

        Raises:
            InvalidValue: If ``dir`` is neither a string nor a path.
            FileNotFound: If the file does not exist.
        """
        match dir:
            case Path():
                pass
            case str():
                dir = Path(dir)
                self.logger.debug(f"Converted dir to Path object: {dir}")
            case _:
                raise InvalidValue("dir", dir, f"must be a Path object not {type(dir)}")
        if not dir.exists():
            raise FileNotFound(dir)
        return dir

    @abstractmethod
    def load_as_dict(self) -> Dict[str, Any]:
        """
        Load the instance as a dictionary in the instance JSON layout.

        Returns:
            Dict[str, Any]: Keys ``matrix``, ``disks``, ``function`` and optionally ``seed``,
            ``kind`` and ``name``.
        """

    @abstractmethod
    def __repr__(self) -> str:
        return ""


class JsonRepository(Repository):
    """
    Repository for instance JSON files.
    """

    def __init__(self, dir: Path | str, loglevel: int | str, config: Config, *args, **kwargs):
        """
        Initialize the JsonRepository.

        Args:
            dir (Path | str): Path of the instance file.
            loglevel (int | str): The log level.
            config (Config): The configuration object.
        """
        super().__init__(loglevel, config)
        self.dir = self.check_dir(dir)
        self.logger.debug(f"Init JsonRepository with dir={self.dir}")

    def _parse(self) -> list[Dict[str, Any]]:
        """
        Parse the file; it holds one instance object, a list of them or ``{"instances": [...]}``.
        """
        self.logger.debug(f"Parse file={self.dir}")
        try:
            data = json.loads(self.dir.read_text())
        except json.JSONDecodeError as error:
            raise InstanceSchemaError(f"{self.dir} is not valid JSON ({error.msg}, line {error.lineno})")
        match data:
            case {"instances": list(items)}:
                pass
            case list(items):
                pass
            case dict():
                items = [data]
            case _:
                raise InstanceSchemaError(f"{self.dir} must hold a JSON object or list")
        if not items or not all(isinstance(item, dict) for item in items):
            raise InstanceSchemaError(f"{self.dir} must hold at least one instance object")
        for i, item in enumerate(items):
            item.setdefault("name", self.dir.stem if len(items) == 1 else f"{self.dir.stem}[{i}]")
        return items

    def load_as_dict(self) -> Dict[str, Any]:
        """The first instance of the file."""
        _dict = self._parse()[0]
        self.logger.debug("Loaded as dict")
        return _dict

    def load_all(self) -> list[Dict[str, Any]]:
        items = self._parse()
        self.logger.debug(f"Loaded {len(items)} instances")
        return items

    def __repr__(self) -> str:
        return f"JsonRepository(dir={self.dir})"


class DictRepository(Repository):
    """Wraps an already parsed instance dictionary, e.g. one element of a campaign file."""

    def __init__(self, instance: Dict[str, Any], loglevel: int | str, config: Config, *args, **kwargs):
        super().__init__(loglevel=loglevel, config=config)
        self.instance = dict(instance)
        self.logger.debug(f"Init DictRepository with keys {sorted(self.instance)}")

    def load_as_dict(self) -> Dict[str, Any]:
        return dict(self.instance)

    def __repr__(self) -> str:
        return f"DictRepository(name={self.instance.get('name', '')!r})"


class RandomRepository(Repository):
    """
    Repository drawing one seeded random instance.

    The instance is serialized to the JSON layout so that it passes through the same validator
    and mapper as a file instance, and its digest matches the digest of the written file.
    """

    def __init__(
        self,
        loglevel: int | str,
        config: Config,
        kind: str = "annulus",
        n_dim: int = 4,
        seed: int = 0,
        radius: float = 2.0,
        theta: float = 1.0471975511965976,
        n_disks: int = 3,
        degree: int = 3,
        block_size: int = 1,
        *args,
        **kwargs,
    ):
        """
        Initialize the RandomRepository.

        Args:
            loglevel (int | str): The log level.
            config (Config): The configuration object.
            kind (str): ``annulus``, ``sector``, ``strip``, ``lens``, ``n_disks`` or ``n_disks<k>``.
            n_dim (int): Dimension of the matrix.
            seed (int): Seed of the generator.
            radius (float): Annulus ratio ``R``.
            theta (float): Sector angle.
            n_disks (int): Number of disks for ``n_disks``.
            degree (int): Number of poles per entry of ``f``.
            block_size (int): Block size of ``f``.
        """
        super().__init__(loglevel, config)
        self.kwargs = dict(
            kind=kind,
            n_dim=n_dim,
            seed=seed,
            radius=radius,
            theta=theta,
            n_disks=n_disks,
            degree=degree,
            block_size=block_size,
        )
        self.logger.debug(f"Init RandomRepository with {self.kwargs}")

    def load_as_dict(self) -> Dict[str, Any]:
        instance = random_instance(**self.kwargs)
        _dict = instance.asdict()
        _dict["name"] = f"{self.kwargs['kind']}-{self.kwargs['seed']}"
        self.logger.debug("Loaded as dict")
        return _dict

    def __repr__(self) -> str:
        return f"RandomRepository(kind={self.kwargs['kind']}, seed={self.kwargs['seed']})"
