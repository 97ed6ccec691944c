from specsetlab.types.config_types import Config
from specsetlab.utils.load_config import load_config

__all__ = ["Config", "load_config"]
