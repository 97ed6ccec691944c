import logging
import sys

_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def _as_level(loglevel: int | str) -> int:
    match loglevel:
        case "DEBUG" | "debug" | 0:
            return logging.DEBUG
        case "INFO" | "info" | 1:
            return logging.INFO
        case "WARNING" | "warning" | 2:
            return logging.WARNING
        case "ERROR" | "error" | 3:
            return logging.ERROR
        case "CRITICAL" | "critical" | 4:
            return logging.CRITICAL
        case _:
            raise ValueError(
                f"Invalid loglevel: {loglevel}. Must be one of: DEBUG, INFO, WARNING, ERROR, CRITICAL, or their numeric equivalents."
            )  # not raising custom exception to avoid circular import issues


def get_logger(
    name: str,
    loglevel: int | str,
    handler: logging.Handler | None = None,
) -> logging.Logger:
    """
    get a logger object with the given name and log level.
    matches various log levels and converts them to the corresponding logging level.

    Args:
        name (str): The name of the logger.
        loglevel (int|str): The log level.
        handler (logging.Handler, optional): Handler to attach. Defaults to a stderr stream
            handler, so that stdout stays free for machine-readable reports.
    Returns:
        logging.Logger: The logger object.
    Raises:
        ValueError: If the loglevel is invalid.
    """
    level = _as_level(loglevel)
    logger = logging.getLogger(name)
    logger.propagate = False

    if handler is not None or not logger.handlers:
        handler = handler if handler is not None else logging.StreamHandler(sys.stderr)
        handler.setFormatter(logging.Formatter(_FORMAT))
        logger.addHandler(handler)

    logger.setLevel(level)
    return logger


def set_loglevel(loglevel: int | str, prefix: str = "specsetlab") -> None:
    """Re-level every already created logger below ``prefix``."""
    level = _as_level(loglevel)
    for name, logger in logging.Logger.manager.loggerDict.items():
        if name.startswith(prefix) and isinstance(logger, logging.Logger):
            logger.setLevel(level)
