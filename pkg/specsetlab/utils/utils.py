import hashlib
import json
import logging
import re
from dataclasses import asdict
from typing import Any, Protocol

from specsetlab.utils.exceptions import InvalidValue


def as_lowercase(s: Any) -> Any:
    """
    Convert the given object to snake_case if it is a string.

    Args:
        s (Any): The object to convert.

    Returns:
        Any: The snake_case string if the input was a string, otherwise the original object.
    """
    if isinstance(s, str):
        return re.sub(r"(?<!^)(?=[A-Z])", "_", s).lower()
    return s


class ConfigProtocol(Protocol):
    """Protocol defining the interface expected for config objects"""

    def __getattr__(self, name: str) -> Any: ...


Config = ConfigProtocol


def get_args(
    logger: logging.Logger, std_args: dict, config: Config, cfg_instance: list[str]
) -> dict:
    """
    Get the arguments by merging the standard arguments with the attributes of the config object.

    ``cfg_instance`` is a path into the config. When the last element names a string field
    (e.g. ``["compiler", "repo"]`` holding ``"JsonRepository"``), the sibling block named after
    the snake_case class name (``compiler.json_repository``) supplies the arguments.

    Args:
        logger (logging.Logger): Logger for lookup diagnostics.
        std_args (dict): The standard arguments, can be empty.
        config (Config): The config object.
        cfg_instance (list[str]): The list of attribute names to access the desired config instance.

    Returns:
        dict: The merged arguments, to be used in the constructor of the object.

    Raises:
        InvalidValue: If the config object is None or if a parent attribute is missing.
    """
    if config is None:
        raise InvalidValue("config", config, "must be a Config object not None")
    parent = config
    for instance in cfg_instance[:-1]:
        if not hasattr(parent, instance):
            raise InvalidValue(
                "config",
                instance,
                "attribute missing, make sure there is not a typo in code or config file.",
            )
        parent = getattr(parent, instance)

    current = config
    for instance in cfg_instance:
        instance = as_lowercase(instance)
        if not hasattr(current, instance):
            logger.debug(f"config has no attribute {instance}, returning no additional arguments.")
            return dict(std_args)
        current = getattr(current, instance)

    match current:
        case str():
            name = as_lowercase(current)
            if not hasattr(parent, name):
                logger.debug(f"config has no block {name}, returning no additional arguments.")
                return dict(std_args)
            cfg_dict = asdict(getattr(parent, name))
        case _:
            cfg_dict = asdict(current)

    return {**std_args, **cfg_dict}


def digest(obj: Any) -> str:
    """
    SHA-256 digest of a JSON-serializable object.

    Keys are sorted so equal content gives equal digests.

    Args:
        obj (Any): The object to hash, typically an instance dict.

    Returns:
        str: Hex digest.
    """
    payload = json.dumps(obj, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(payload).hexdigest()
