# domain/status.py
from __future__ import annotations

from enum import Enum


class CommandStatus(str, Enum):
    OK = "ok"

    # verdict mathématique négatif
    NEGATIVE = "negative"

    # erreurs d'entrée / configuration
    USAGE_ERROR = "usage_error"

    # budgets dépassés
    LIMIT_EXCEEDED = "limit_exceeded"

    # bug détecté
    INTERNAL_ERROR = "internal_error"


class Verdict(str, Enum):
    YES = "yes"
    NO = "no"
    UNDETERMINED = "undetermined"


EXIT_CODES = {
    CommandStatus.OK: 0,
    CommandStatus.NEGATIVE: 1,
    CommandStatus.USAGE_ERROR: 2,
    CommandStatus.LIMIT_EXCEEDED: 3,
    CommandStatus.INTERNAL_ERROR: 4,
}


def exit_code(status: CommandStatus) -> int:
    return EXIT_CODES[status]
