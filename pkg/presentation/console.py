# presentation/console.py

from __future__ import annotations

import logging
from typing import Any, Dict, List, Sequence

from tabulate import tabulate

logger = logging.getLogger(__name__)

_TABLE_FORMAT = "simple"


def _yes_no(flag: Any) -> str:
    if flag is None:
        return "-"
    return "oui" if flag else "non"


def _header(payload: Dict[str, Any]) -> List[str]:
    algebra = payload.get("algebra") or {}
    if not algebra:
        return []
    return [
        f"Algèbre {algebra.get('name', '?')} sur {algebra.get('field', '?')} : "
        f"dimension {algebra['dim']}, sommets {', '.join(algebra['vertices'])}"
    ]


def render_info(payload: Dict[str, Any]) -> str:
    lines = _header(payload)
    nakayama = payload.get("nakayama_permutation")
    rows = [
        ["radical", payload["radical_dim"]],
        ["socle", payload["socle_dim"]],
        ["auto-injective", _yes_no(payload["self_injective"])],
        ["permutation de Nakayama", nakayama.get("cycles", "-") if nakayama else "-"],
        ["longueur de Loewy", payload.get("loewy_length", "-")],
    ]
    lines.append(tabulate(rows, tablefmt=_TABLE_FORMAT))
    arrows = payload["valued_quiver"].get("arrows", [])
    if arrows:
        lines.append("")
        lines.append(
            tabulate(
                [[a["source"], a["target"], f"({a['valuation'][0]},{a['valuation'][1]})"] for a in arrows],
                headers=["source", "but", "valuation"],
                tablefmt=_TABLE_FORMAT,
            )
        )
    cartan = payload.get("cartan_matrix")
    if cartan:
        lines.append("")
        lines.append("Matrice de Cartan :")
        lines.append(tabulate(cartan, tablefmt="plain"))
    return "\n".join(lines)


def render_ar_quiver(payload: Dict[str, Any]) -> str:
    lines = _header(payload)
    quiver = payload["ar_quiver"]
    rows = [
        [v["id"], v["name"], "".join(str(d) for d in v["dim_vector"]), _yes_no(v["projective"]), _yes_no(v["injective"])]
        for v in quiver["vertices"]
    ]
    lines.append(tabulate(rows, headers=["id", "module", "dim", "projectif", "injectif"], tablefmt=_TABLE_FORMAT))
    lines.append("")
    lines.append(
        f"{len(quiver['vertices'])} indécomposables, {payload.get('projectives', '?')} projectifs, "
        f"{payload.get('stable_vertices', '?')} sommets stables"
    )
    orbits = payload.get("tau_orbits") or []
    if orbits:
        lines.append("Orbites de τ : " + " ; ".join("{" + ", ".join(o) + "}" for o in orbits))
    if not quiver["complete"]:
        lines.append("ATTENTION : carquois partiel (limites atteintes)")
    return "\n".join(lines)


def _slice_rows(entries: Sequence[Dict[str, Any]]) -> List[List[Any]]:
    return [
        [
            k,
            ", ".join(e["vertices"]),
            _yes_no(e["is_stable_slice"]),
            _yes_no(e.get("right_regular")),
            _yes_no(e.get("almost_right_regular")),
            _yes_no(e["hereditary"]),
        ]
        for k, e in enumerate(entries, start=1)
    ]


_SLICE_HEADERS = ["#", "section", "stable", "rég. à droite", "presque rég.", "héréditaire"]


def render_slices(payload: Dict[str, Any]) -> str:
    lines = _header(payload)
    entries = payload["slices"]
    if entries:
        lines.append(tabulate(_slice_rows(entries), headers=_SLICE_HEADERS, tablefmt=_TABLE_FORMAT))
    lines.append(f"{len(entries)} section(s) ({payload.get('filter', 'toutes')})")
    if payload.get("truncated"):
        lines.append("ATTENTION : énumération tronquée")
    return "\n".join(lines)


def render_slice(payload: Dict[str, Any]) -> str:
    lines = _header(payload)
    entry = payload["slice"]
    lines.append(tabulate(_slice_rows([entry]), headers=_SLICE_HEADERS, tablefmt=_TABLE_FORMAT))
    if entry.get("violated_condition"):
        lines.append(f"Condition violée : ({entry['violated_condition']})")
    return "\n".join(lines)


def render_build(payload: Dict[str, Any]) -> str:
    return payload["document"].rstrip("\n")


def render_socle(payload: Dict[str, Any]) -> str:
    lines = _header(payload)
    lines.append(f"Équivalence socle : {payload['socle_equivalent']}")
    if payload.get("invariant"):
        lines.append(f"Invariant distinctif : {payload['invariant']}")
    witness = payload.get("witness")
    if witness:
        rows = [[source, target] for source, target in witness.get("generators", {}).items()]
        lines.append(tabulate(rows, headers=["générateur", "image"], tablefmt=_TABLE_FORMAT))
    return "\n".join(lines)


def render_theorem(payload: Dict[str, Any]) -> str:
    lines = _header(payload)
    if payload.get("slice"):
        lines.append("Section : {" + ", ".join(payload["slice"]) + "}")
    rows = [[s["stage"], _yes_no(s["ok"])] for s in payload["stages"]]
    lines.append(tabulate(rows, headers=["étape", "ok"], tablefmt=_TABLE_FORMAT))
    lines.append(f"Équivalence socle A ~ A[I] : {payload['socle_equivalent']}")
    if payload.get("failed_stage"):
        lines.append(f"Étape en échec : {payload['failed_stage']}")
    if payload.get("contradiction"):
        lines.append("INCOHÉRENCE : identités d'annulateurs violées")
    return "\n".join(lines)


def render_error(payload: Dict[str, Any]) -> str:
    return f"[{payload['status']}] {payload.get('message', '')}"


RENDERERS = {
    "info": render_info,
    "ar-quiver": render_ar_quiver,
    "slices": render_slices,
    "check-slice": render_slice,
    "build": render_build,
    "socle-compare": render_socle,
    "check-theorem": render_theorem,
}


def render(payload: Dict[str, Any]) -> str:
    """Rendu texte d'un rapport ; les rapports d'erreur se résument au message."""
    if payload.get("status") not in ("ok", "negative"):
        return render_error(payload)
    renderer = RENDERERS.get(payload.get("command", ""))
    if renderer is None:
        logger.warning("Pas de rendu pour la commande %r.", payload.get("command"))
        return render_error(payload)
    return renderer(payload)
