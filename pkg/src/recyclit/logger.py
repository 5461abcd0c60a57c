"""
Providing builtin logger setups.
"""

import logging
import sys
from pathlib import Path

from recycler._typing import StrPath

FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

_LEVELS = (logging.WARNING, logging.INFO, logging.DEBUG)


def _level(verbosity: int) -> int:
    """
    Logging level for a `-v` count.
    """

    return _LEVELS[min(max(verbosity, 0), len(_LEVELS) - 1)]


def _attach(handler: logging.Handler, verbosity: int) -> logging.Logger:
    """
    Route the package loggers to `handler`.
    """

    handler.setFormatter(logging.Formatter(FORMAT))

    for name in ("recycler", "recyclit"):
        logger = logging.getLogger(name)
        logger.setLevel(_level(verbosity))

        # one handler per process, replaced on every setup
        for old in list(logger.handlers):
            logger.removeHandler(old)
            old.close()

        logger.addHandler(handler)

    return logging.getLogger("recyclit")


def standard_logger(verbosity: int = 0) -> logging.Logger:
    """
    Logging to stderr.

    Args:
        verbosity (int, optional): 0 for warnings, 1 for info, 2 or more for debug. Defaults to 0.

    Returns:
        logging.Logger: The CLI logger; library records go to the same handler.
    """

    return _attach(logging.StreamHandler(sys.stderr), verbosity)


def file_logger(root: StrPath, name: str, verbosity: int = 0) -> logging.Logger:
    """
    Logging to file with name as configured in specific directory.

    Args:
        root (StrPath): The log root directory.
        name (str): The log file name, without suffix.
        verbosity (int, optional): As in `standard_logger`. Defaults to 0.

    Returns:
        logging.Logger: The CLI logger, writing to `root/name.log`.
    """

    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)

    path = (root / name).with_suffix(".log")
    return _attach(logging.FileHandler(path, mode="w"), verbosity)
