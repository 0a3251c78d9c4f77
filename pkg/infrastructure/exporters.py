# infrastructure/exporters.py

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path
from typing import Any, Dict, Optional, TextIO

from jsonschema import ValidationError, validate

from domain.report_schema import report_schema
from domain.status import CommandStatus

logger = logging.getLogger(__name__)

STDOUT_TARGET = "-"


class ReportValidationError(RuntimeError):
    """Exception technique : rapport JSON non conforme au schéma de sa commande."""


def validate_report(payload: Dict[str, Any], *, strict: bool = True) -> None:
    """
    Valide un rapport contre le schéma de sa commande.

    - strict=True : lève ReportValidationError si non conforme
    - strict=False : warning uniquement
    Un rapport d'erreur (status ≠ ok/negative) n'exige que le socle commun.
    """
    command = str(payload.get("command", ""))
    complete = payload.get("status") in (CommandStatus.OK.value, CommandStatus.NEGATIVE.value)
    try:
        validate(instance=payload, schema=report_schema(command, complete=complete))
        logger.debug("Rapport %s conforme au schéma.", command)
    except ValidationError as exc:
        msg = getattr(exc, "message", str(exc))
        if strict:
            logger.error("Rapport %s non conforme au schéma [STRICT]: %s", command, msg)
            raise ReportValidationError(f"Schema validation failed ({command}): {msg}") from exc
        logger.warning("Rapport %s non conforme au schéma [non-strict]: %s", command, msg)


def dumps_report(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True, default=str)


def _write_text(text: str, target: str | Path, stream: Optional[TextIO] = None) -> None:
    if str(target) == STDOUT_TARGET:
        out = stream or sys.stdout
        out.write(text)
        if not text.endswith("\n"):
            out.write("\n")
        return
    path = Path(target)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text if text.endswith("\n") else text + "\n", encoding="utf-8")
    except OSError as exc:
        logger.error("Écriture impossible de %s: %s", path, exc)
        raise
    logger.info("Fichier écrit : %s", path)


def write_json(
    payload: Dict[str, Any],
    target: str | Path,
    *,
    strict: bool = True,
    stream: Optional[TextIO] = None,
) -> None:
    """Valide puis écrit le rapport ; `-` désigne la sortie standard."""
    validate_report(payload, strict=strict)
    _write_text(dumps_report(payload), target, stream)


def write_dot(dot: str, target: str | Path, stream: Optional[TextIO] = None) -> None:
    _write_text(dot, target, stream)


def write_document_text(text: str, target: str | Path, stream: Optional[TextIO] = None) -> None:
    _write_text(text, target, stream)
