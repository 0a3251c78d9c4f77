# config/log_config.py

from __future__ import annotations

import copy
import logging
import logging.config
import sys
from typing import Any, Dict

from tqdm import tqdm

SUCCESS_LEVEL = 25
logging.addLevelName(SUCCESS_LEVEL, "SUCCESS")


def _log_success(self: logging.Logger, msg: str, *args: Any, **kwargs: Any) -> None:
    if self.isEnabledFor(SUCCESS_LEVEL):
        self._log(SUCCESS_LEVEL, msg, args, **kwargs)


if not hasattr(logging.Logger, "success"):
    setattr(logging.Logger, "success", _log_success)


class TqdmStderrHandler(logging.Handler):
    """
    Écrit les messages sur stderr via tqdm.write, pour ne pas casser la
    barre de progression du tricotage (--progress).
    """

    def emit(self, record: logging.LogRecord) -> None:
        try:
            tqdm.write(self.format(record), file=sys.stderr)
        except Exception:
            self.handleError(record)


# Modules de calcul exact très bavards en DEBUG : tenus à WARNING sinon.
NOISY_LOGGERS = ("domain.linalg", "domain.modules.hom", "domain.algebra.radical")

LOGGING_CONFIG: Dict[str, Any] = {
    "version": 1,
    "disable_existing_loggers": False,
    "formatters": {
        "compact": {
            "format": "%(asctime)s | %(levelname)-8s | %(message)s",
            "datefmt": "%H:%M:%S",
        },
        "verbose": {
            "format": "%(asctime)s | %(levelname)-8s | %(name)s | %(funcName)s:%(lineno)d | %(message)s",
            "datefmt": "%Y-%m-%d %H:%M:%S",
        },
    },
    "handlers": {
        "stderr": {
            "()": TqdmStderrHandler,
            "formatter": "compact",
            "level": "DEBUG",
        },
    },
    "loggers": {name: {"level": "WARNING"} for name in NOISY_LOGGERS},
    "root": {
        "handlers": ["stderr"],
        "level": "INFO",
    },
}


def build_logging_config(level: int) -> Dict[str, Any]:
    """Configuration dictConfig pour un niveau donné (stdout reste aux rapports)."""
    config = copy.deepcopy(LOGGING_CONFIG)
    config["root"]["level"] = logging.getLevelName(level)
    if level <= logging.DEBUG:
        config["handlers"]["stderr"]["formatter"] = "verbose"
        config["loggers"] = {}
    return config


def setup_logging(level: int = logging.INFO) -> None:
    """Initialise le logging de la ligne de commande."""
    try:
        logging.config.dictConfig(build_logging_config(level))
    except (ValueError, TypeError, AttributeError, ImportError):
        logging.basicConfig(level=level, stream=sys.stderr)
        logging.getLogger(__name__).exception("dictConfig refusé, repli sur basicConfig.")
        return
    logging.getLogger(__name__).debug("Logging initialisé (niveau %s).", logging.getLevelName(level))
