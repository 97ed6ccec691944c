import os
from pathlib import Path
from typing import Union

from hydra import compose, initialize_config_dir
from omegaconf import OmegaConf

from specsetlab.types.config_types import Config

# Default paths relative to the project root
CONFIG_DIR = Path(__file__).resolve().parents[2] / "data" / "config"
CONFIG_NAME = "default_config"
TOLERANCE_ENV = "SPECSET_TOL"


def load_config(
    config_path: Union[str, Path] = CONFIG_NAME,
    config_dir: Union[str, Path] = CONFIG_DIR,
    overrides: list[str] | None = None,
) -> Config:
    """
    Load the configuration using Hydra.

    Args:
        config_path (Union[str, Path]): The name of the config file (without .yaml) or a Path to a config file.
        config_dir (Union[str, Path]): The directory containing the config files. Relative
            paths are resolved against the project root.
        overrides (list[str], optional): A list of Hydra-style overrides (e.g., ["quadrature.tolerance=1e-10"]).

    Returns:
        Config: The loaded and validated configuration object.
    """
    if isinstance(config_path, Path) or (isinstance(config_path, str) and "/" in config_path):
        p = Path(config_path)
        config_name = p.stem
        if p.parent != Path("."):
            config_dir = p.parent
    else:
        config_name = str(config_path)

    overrides = list(overrides or [])
    if TOLERANCE_ENV in os.environ:
        overrides.append(f"quadrature.tolerance={os.environ[TOLERANCE_ENV]}")

    config_dir = Path(config_dir)
    if not config_dir.is_absolute():
        config_dir = CONFIG_DIR.parents[1] / config_dir
    if not (config_dir / f"{config_name}.yaml").exists():
        # installed without the data directory
        schema = OmegaConf.structured(Config)
        return cast_to_config(OmegaConf.merge(schema, OmegaConf.from_dotlist(overrides)))

    with initialize_config_dir(version_base=None, config_dir=str(config_dir.resolve())):
        cfg = compose(config_name=config_name, overrides=overrides)

        # Merge with structured config for type safety and validation
        schema = OmegaConf.structured(Config)
        merged_cfg = OmegaConf.merge(schema, cfg)

        return cast_to_config(merged_cfg)


def cast_to_config(cfg) -> Config:
    """Helper to convert OmegaConf to the Config dataclass."""
    return OmegaConf.to_object(cfg)
