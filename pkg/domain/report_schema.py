# domain/report_schema.py

from __future__ import annotations

import copy
import logging
from typing import Any, Dict

from domain.status import CommandStatus, Verdict

logger = logging.getLogger(__name__)

# Tous les rapports JSON partagent `status` et `algebra` ; `algebra` vaut null
# quand l'entrée n'a pas pu être construite (erreur d'analyse, configuration).
_ALGEBRA_SUMMARY: Dict[str, Any] = {
    "type": ["object", "null"],
    "properties": {
        "name": {"type": "string"},
        "dim": {"type": "integer", "minimum": 0},
        "vertices": {"type": "array", "items": {"type": "string"}},
        "field": {"type": "string"},
    },
    "required": ["dim", "vertices"],
}

_VERDICT = {"type": "string", "enum": [v.value for v in Verdict]}

_BASE: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "command": {"type": "string"},
        "status": {"type": "string", "enum": [s.value for s in CommandStatus]},
        "algebra": _ALGEBRA_SUMMARY,
        "message": {"type": "string"},
    },
    "required": ["command", "status", "algebra"],
}

_SLICE_ENTRY: Dict[str, Any] = {
    "type": "object",
    "properties": {
        "vertices": {"type": "array", "items": {"type": "string"}},
        "is_stable_slice": {"type": "boolean"},
        "right_regular": {"type": "boolean"},
        "almost_right_regular": {"type": "boolean"},
        "hereditary": {"type": "boolean"},
    },
    "required": ["vertices", "is_stable_slice", "hereditary"],
}

_PAYLOADS: Dict[str, Dict[str, Any]] = {
    "info": {
        "properties": {
            "radical_dim": {"type": "integer"},
            "socle_dim": {"type": "integer"},
            "self_injective": {"type": "boolean"},
            "nakayama_permutation": {"type": ["object", "null"]},
            "valued_quiver": {"type": "object"},
            "cartan_matrix": {"type": "array"},
        },
        "required": ["radical_dim", "socle_dim", "self_injective", "valued_quiver"],
    },
    "ar-quiver": {
        "properties": {
            "ar_quiver": {
                "type": "object",
                "properties": {
                    "vertices": {"type": "array"},
                    "arrows": {"type": "array"},
                    "tau": {"type": "array"},
                    "complete": {"type": "boolean"},
                },
                "required": ["vertices", "arrows", "tau", "complete"],
            },
            "projectives": {"type": "integer"},
            "stable_vertices": {"type": "integer"},
            "tau_orbits": {"type": "array", "items": {"type": "array"}},
        },
        "required": ["ar_quiver"],
    },
    "slices": {
        "properties": {
            "slices": {"type": "array", "items": _SLICE_ENTRY},
            "truncated": {"type": "boolean"},
            "examined": {"type": "integer"},
            "filter": {"type": "string"},
        },
        "required": ["slices", "truncated"],
    },
    "check-slice": {
        "properties": {"slice": _SLICE_ENTRY},
        "required": ["slice"],
    },
    "build": {
        "properties": {
            "construction": {"type": "string"},
            "r": {"type": "integer", "minimum": 1},
            "twist": {"type": ["string", "null"]},
            "result": _ALGEBRA_SUMMARY,
            "document": {"type": "string"},
        },
        "required": ["construction", "result", "document"],
    },
    "socle-compare": {
        "properties": {
            "socle_equivalent": _VERDICT,
            "invariant": {"type": ["string", "null"]},
            "witness": {"type": ["object", "null"]},
            "other": _ALGEBRA_SUMMARY,
        },
        "required": ["socle_equivalent"],
    },
    "check-theorem": {
        "properties": {
            "slice": {"type": ["array", "null"], "items": {"type": "string"}},
            "stages": {"type": "array"},
            "failed_stage": {"type": ["string", "null"]},
            "socle_equivalent": {"anyOf": [_VERDICT, {"type": "null"}]},
        },
        "required": ["stages", "socle_equivalent"],
    },
}


def report_schema(command: str, complete: bool = True) -> Dict[str, Any]:
    """
    Schéma JSON du rapport d'une commande : socle commun (`status`, `algebra`)
    complété par la charge utile propre à la commande.

    - complete=False : rapport d'erreur, la charge utile devient facultative
    - une commande inconnue reçoit le socle commun seul
    """
    schema = copy.deepcopy(_BASE)
    payload = _PAYLOADS.get(command)
    if payload is None:
        logger.debug("Pas de schéma spécifique pour %r, socle commun seul.", command)
        return schema
    schema["properties"].update(copy.deepcopy(payload["properties"]))
    if complete:
        schema["required"].extend(payload["required"])
    return schema
