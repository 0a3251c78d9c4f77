# main.py

from __future__ import annotations

import argparse
import logging
import os
import sys
from dataclasses import replace
from typing import Any, Callable, Dict, Optional, Sequence

from config.log_config import setup_logging
from config.settings import Settings, load_settings
from domain.algebra.algebra import Algebra, ConsistencyError, NonSplitResidueError
from domain.algebra.ideals import socle
from domain.algebra.presentation import PresentationError
from domain.algebra.properties import cartan_matrix, is_self_injective
from domain.algebra.quiver import valued_quiver
from domain.arquiver import ARQuiver, KnittingLimitError, KnittingLimits, knit, stable_quiver, tau_orbits, to_dot
from domain.constructions import (
    AutomorphismError,
    IsoBudget,
    orbit_algebra,
    socle_equivalent,
    theorem_pipeline,
)
from domain.constructions.isomorphism import SearchBudgetExceeded
from domain.document import DocumentValidationError, InputDocument
from domain.linalg.field import FieldSpecError
from domain.slices import (
    SelectorError,
    Slice,
    SliceHypothesisError,
    classify_slice,
    classify_slices,
    enumerate_stable_slices,
    select_slice,
    split_selectors,
)
from domain.status import CommandStatus, Verdict, exit_code
from infrastructure.document_writer import write_document
from infrastructure.exporters import ReportValidationError, write_document_text, write_dot, write_json
from infrastructure.parser import DocumentParseError, parse_file
from presentation.console import render

logger = logging.getLogger(__name__)


class UsageError(ValueError):
    """Exception fonctionnelle : option de ligne de commande hors domaine."""


# erreurs d'entrée : code 2
_USAGE_ERRORS = (
    UsageError,
    DocumentParseError,
    DocumentValidationError,
    PresentationError,
    FieldSpecError,
    SelectorError,
    AutomorphismError,
    NonSplitResidueError,
)
# budgets : code 3
_LIMIT_ERRORS = (KnittingLimitError, SearchBudgetExceeded)


def _get_log_level() -> int:
    """
    Récupère le niveau de log depuis la variable d'environnement LOG_LEVEL.
    Valeurs acceptées : DEBUG, INFO, WARNING, ERROR, CRITICAL (défaut INFO).
    """
    level_name = os.getenv("LOG_LEVEL", "INFO").upper().strip()
    level_map = {
        "DEBUG": logging.DEBUG,
        "INFO": logging.INFO,
        "WARNING": logging.WARNING,
        "WARN": logging.WARNING,
        "ERROR": logging.ERROR,
        "CRITICAL": logging.CRITICAL,
    }
    return level_map.get(level_name, logging.INFO)


# ------------------------------------------------------------------ #
# Arguments CLI
# ------------------------------------------------------------------ #


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="CHEMIN", help="Rapport JSON (`-` pour la sortie standard).")
    common.add_argument("--progress", action="store_true", help="Barre de progression du tricotage (stderr).")
    common.add_argument("--seed", type=int, help="Graine des choix pseudo-aléatoires.")
    common.add_argument("--threads", type=int, help="Workers pour la classification des sections.")

    parser = argparse.ArgumentParser(
        prog="algebra-slices",
        description="Algèbres de carquois liés, carquois d'Auslander-Reiten et sections stables.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    info = commands.add_parser("info", parents=[common], help="Invariants de l'algèbre.")
    info.add_argument("file")

    ar = commands.add_parser("ar-quiver", parents=[common], help="Tricote Γ_A et l'exporte.")
    ar.add_argument("file")
    ar.add_argument("--dot", metavar="CHEMIN", help="Export DOT (`-` pour la sortie standard).")

    slices = commands.add_parser("slices", parents=[common], help="Énumère et classe les sections stables.")
    slices.add_argument("file")
    slices.add_argument("--hereditary-only", action="store_true", help="Sections héréditaires régulières à droite.")
    slices.add_argument("--almost-regular", action="store_true", help="Sections héréditaires presque régulières à droite.")
    slices.add_argument("--max-size", type=int, help="Taille maximale des sections énumérées.")

    check = commands.add_parser("check-slice", parents=[common], help="Classe une section donnée.")
    check.add_argument("file")
    check.add_argument("--modules", required=True, help="Sélecteurs séparés par des virgules, ou nom de section.")

    build = commands.add_parser("build", help="Constructions d'algèbres.")
    builds = build.add_subparsers(dest="construction", required=True)
    trivial = builds.add_parser("trivial-extension", parents=[common], help="T(B), T(B)^(r) ou T_σ(B).")
    trivial.add_argument("file")
    trivial.add_argument("-r", type=int, default=1, help="Nombre de tranches (défaut 1).")
    trivial.add_argument("--twist", metavar="NOM", help="Automorphisme déclaré dans le document.")
    trivial.add_argument("-o", "--output", metavar="CHEMIN", help="Écrit le document construit dans ce fichier.")

    compare = commands.add_parser("socle-compare", parents=[common], help="A/soc A ≅ A'/soc A' ?")
    compare.add_argument("file")
    compare.add_argument("other")

    theorem = commands.add_parser("check-theorem", parents=[common], help="Chaîne section -> B -> A[I].")
    theorem.add_argument("file")
    theorem.add_argument("--slice", help="Nom de section du document ou sélecteurs séparés par des virgules.")
    return parser


def _apply_overrides(settings: Settings, args: argparse.Namespace) -> Settings:
    overrides: Dict[str, Any] = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.threads is not None:
        if args.threads < 1:
            raise UsageError(f"--threads doit être ≥ 1 (reçu {args.threads})")
        overrides["threads"] = args.threads
    if getattr(args, "max_size", None) is not None:
        if args.max_size < 1:
            raise UsageError(f"--max-size doit être ≥ 1 (reçu {args.max_size})")
        overrides["slice_max_size"] = args.max_size
    return replace(settings, **overrides) if overrides else settings


# ------------------------------------------------------------------ #
# Commandes
# ------------------------------------------------------------------ #


def algebra_summary(a: Algebra, name: str) -> Dict[str, Any]:
    return {"name": name, "dim": a.dim, "vertices": list(a.vertex_names), "field": str(a.field)}


class _Context:
    """Document, algèbre et réglages d'une invocation."""

    def __init__(self, args: argparse.Namespace, settings: Settings) -> None:
        self.args = args
        self.settings = settings
        self.document: Optional[InputDocument] = None
        self.algebra: Optional[Algebra] = None

    def load(self, path: str) -> Algebra:
        self.document = parse_file(path)
        self.algebra = self.document.build(self.settings.length_cap)
        logger.info("%s chargée : %s", self.document.name, self.algebra.describe())
        return self.algebra

    @property
    def summary(self) -> Optional[Dict[str, Any]]:
        if self.algebra is None or self.document is None:
            return None
        return algebra_summary(self.algebra, self.document.name)

    @property
    def budget(self) -> IsoBudget:
        s = self.settings
        return IsoBudget(s.iso_max_dim, s.iso_max_vertices, s.iso_max_nodes)

    def knit(self, a: Algebra) -> ARQuiver:
        s = self.settings
        return knit(
            a,
            KnittingLimits(s.max_modules, s.max_dim),
            progress=bool(self.args.progress),
            seed=s.seed,
            attempts=s.split_attempts,
        )

    def slice_from(self, g: ARQuiver, text: str) -> Slice:
        assert self.document is not None
        try:
            selectors = self.document.slice_spec(text.strip()).selectors
        except KeyError:
            selectors = split_selectors(text)
        return select_slice(g, selectors)


def cmd_info(ctx: _Context) -> Dict[str, Any]:
    a = ctx.load(ctx.args.file)
    nakayama = is_self_injective(a)
    payload = {
        "radical_dim": a.radical.dim,
        "socle_dim": socle(a).dim,
        "loewy_length": a.loewy_length,
        "self_injective": nakayama is not None,
        "nakayama_permutation": (
            {"cycles": str(nakayama), "mapping": nakayama.as_names()} if nakayama is not None else None
        ),
        "valued_quiver": valued_quiver(a).to_dict(),
        "cartan_matrix": [list(row) for row in cartan_matrix(a)],
    }
    return {"status": CommandStatus.OK, **payload}


def cmd_ar_quiver(ctx: _Context) -> Dict[str, Any]:
    a = ctx.load(ctx.args.file)
    g = ctx.knit(a)
    s = stable_quiver(g)
    if ctx.args.dot:
        write_dot(to_dot(g), ctx.args.dot)
    return {
        "status": CommandStatus.OK if g.complete else CommandStatus.LIMIT_EXCEEDED,
        "ar_quiver": g.to_dict(),
        "projectives": len(g.projective_indices),
        "stable_vertices": len(s),
        "tau_orbits": [[g.vertices[v].name for v in orbit] for orbit in tau_orbits(s)],
    }


def cmd_slices(ctx: _Context) -> Dict[str, Any]:
    a = ctx.load(ctx.args.file)
    s = ctx.settings
    g = ctx.knit(a)
    enumeration = enumerate_stable_slices(g, s.slice_max_size, s.slice_search_limit)
    reports = classify_slices(g, enumeration.slices, s.threads, s.split_attempts, s.seed)
    label = "toutes"
    if ctx.args.almost_regular:
        reports = [r for r in reports if r.hereditary and r.almost_right_regular]
        label = "héréditaires presque régulières à droite"
    elif ctx.args.hereditary_only:
        reports = [r for r in reports if r.hereditary and r.right_regular]
        label = "héréditaires régulières à droite"
    return {
        "status": CommandStatus.LIMIT_EXCEEDED if enumeration.truncated else CommandStatus.OK,
        "slices": [r.to_dict() for r in reports],
        "truncated": enumeration.truncated,
        "examined": enumeration.examined,
        "filter": label,
    }


def cmd_check_slice(ctx: _Context) -> Dict[str, Any]:
    a = ctx.load(ctx.args.file)
    s = ctx.settings
    g = ctx.knit(a)
    d = ctx.slice_from(g, ctx.args.modules)
    report = classify_slice(g, d, s.split_attempts, s.seed)
    return {
        "status": CommandStatus.OK if report.is_stable_slice else CommandStatus.NEGATIVE,
        "slice": report.to_dict(),
    }


def cmd_build(ctx: _Context) -> Dict[str, Any]:
    args = ctx.args
    if args.r < 1:
        raise UsageError(f"-r doit être ≥ 1 (reçu {args.r})")
    b = ctx.load(args.file)
    assert ctx.document is not None
    sigma = ctx.document.automorphism(args.twist, b) if args.twist else None
    t = orbit_algebra(b, args.r, sigma)
    suffix = f"^({args.r})" if args.r > 1 else ""
    twist = f"_{args.twist}" if args.twist else ""
    name = f"T{twist}({ctx.document.name}){suffix}"
    document = write_document(t, name=name)
    if args.output:
        write_document_text(document, args.output)
    return {
        "status": CommandStatus.OK,
        "construction": args.construction,
        "r": args.r,
        "twist": args.twist,
        "result": algebra_summary(t, name),
        "document": document,
    }


_VERDICT_STATUS = {
    Verdict.YES: CommandStatus.OK,
    Verdict.NO: CommandStatus.NEGATIVE,
    Verdict.UNDETERMINED: CommandStatus.LIMIT_EXCEEDED,
}


def cmd_socle_compare(ctx: _Context) -> Dict[str, Any]:
    a1 = ctx.load(ctx.args.file)
    other = parse_file(ctx.args.other)
    a2 = other.build(ctx.settings.length_cap)
    comparison = socle_equivalent(a1, a2, ctx.budget)
    witness = comparison.witness
    return {
        "status": _VERDICT_STATUS[comparison.verdict],
        "socle_equivalent": comparison.verdict.value,
        "invariant": comparison.invariant,
        "witness": witness.to_dict() if witness is not None else None,
        "other": algebra_summary(a2, other.name),
        "details": comparison.to_dict(),
    }


def _default_slice(ctx: _Context, g: ARQuiver) -> Optional[Slice]:
    """Première section héréditaire régulière à droite, à défaut presque régulière."""
    s = ctx.settings
    enumeration = enumerate_stable_slices(g, s.slice_max_size, s.slice_search_limit)
    reports = classify_slices(g, enumeration.slices, s.threads, s.split_attempts, s.seed)
    for wanted in (lambda r: r.right_regular, lambda r: r.almost_right_regular):
        for d, r in zip(enumeration.slices, reports):
            if r.hereditary and wanted(r):
                return d
    return None


def cmd_check_theorem(ctx: _Context) -> Dict[str, Any]:
    a = ctx.load(ctx.args.file)
    s = ctx.settings
    g = ctx.knit(a)
    d = ctx.slice_from(g, ctx.args.slice) if ctx.args.slice else _default_slice(ctx, g)
    if d is None:
        return {
            "status": CommandStatus.NEGATIVE,
            "message": "aucune section héréditaire presque régulière à droite",
            "slice": None,
            "stages": [],
            "failed_stage": "slice",
            "socle_equivalent": None,
        }
    report = theorem_pipeline(a, d, ctx.budget, s.split_attempts, s.seed)
    if report.contradiction:
        status = CommandStatus.INTERNAL_ERROR
    elif report.ok:
        status = CommandStatus.OK
    elif report.failed_stage is None and report.socle_verdict == Verdict.UNDETERMINED:
        status = CommandStatus.LIMIT_EXCEEDED
    else:
        status = CommandStatus.NEGATIVE
    return {"status": status, **report.to_dict()}


COMMANDS: Dict[str, Callable[[_Context], Dict[str, Any]]] = {
    "info": cmd_info,
    "ar-quiver": cmd_ar_quiver,
    "slices": cmd_slices,
    "check-slice": cmd_check_slice,
    "build": cmd_build,
    "socle-compare": cmd_socle_compare,
    "check-theorem": cmd_check_theorem,
}


# ------------------------------------------------------------------ #
# Exécution
# ------------------------------------------------------------------ #


def _error_payload(status: CommandStatus, exc: BaseException) -> Dict[str, Any]:
    payload: Dict[str, Any] = {"status": status, "message": str(exc)}
    partial = getattr(exc, "partial", None)
    if isinstance(partial, ARQuiver):
        payload["ar_quiver"] = partial.to_dict()
    return payload


def run_command(args: argparse.Namespace, settings: Settings) -> Dict[str, Any]:
    """Exécute la commande et renvoie le rapport ; les erreurs deviennent un statut."""
    ctx = _Context(args, settings)
    try:
        payload = COMMANDS[args.command](ctx)
    except _USAGE_ERRORS as exc:
        logger.error("Entrée invalide : %s", exc)
        payload = _error_payload(CommandStatus.USAGE_ERROR, exc)
    except _LIMIT_ERRORS as exc:
        logger.error("Limite atteinte : %s", exc)
        payload = _error_payload(CommandStatus.LIMIT_EXCEEDED, exc)
    except SliceHypothesisError as exc:
        logger.error("Hypothèse non satisfaite : %s", exc)
        payload = _error_payload(CommandStatus.NEGATIVE, exc)
    except ConsistencyError as exc:
        logger.exception("Incohérence interne détectée.")
        payload = _error_payload(CommandStatus.INTERNAL_ERROR, exc)
    except Exception as exc:
        logger.exception("Erreur inattendue pendant %s.", args.command)
        payload = _error_payload(CommandStatus.INTERNAL_ERROR, exc)
    payload["command"] = args.command
    payload["algebra"] = ctx.summary
    payload["status"] = CommandStatus(payload["status"]).value
    return payload


def emit(payload: Dict[str, Any], json_target: Optional[str]) -> None:
    """Texte sur stdout ; JSON validé vers `json_target` (stdout si `-`, à la place du texte)."""
    if json_target != "-":
        print(render(payload))
    if json_target:
        write_json(payload, json_target)


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Point d'entrée principal.

    - Initialise le logging (LOG_LEVEL)
    - Charge la configuration (Settings) et applique les options de ligne de commande
    - Exécute la sous-commande, émet le rapport et renvoie le code de sortie
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse sort déjà en 2 sur erreur d'usage, 0 pour --help
        return int(exc.code or 0)

    log_level = _get_log_level()
    setup_logging(log_level)
    logger.info("Commande %s (log level %s).", args.command, logging.getLevelName(log_level))

    try:
        settings = _apply_overrides(load_settings(), args)
    except Exception as exc:
        logger.critical("Impossible de charger la configuration (Settings). Erreur: %s", exc)
        payload = {"command": args.command, "status": CommandStatus.USAGE_ERROR.value, "algebra": None, "message": str(exc)}
        emit(payload, args.json)
        return exit_code(CommandStatus.USAGE_ERROR)

    payload = run_command(args, settings)
    try:
        emit(payload, args.json)
    except (ReportValidationError, OSError) as exc:
        logger.critical("Émission du rapport impossible : %s", exc)
        return exit_code(CommandStatus.INTERNAL_ERROR)

    status = CommandStatus(payload["status"])
    if status == CommandStatus.OK:
        logger.success("Commande %s terminée.", args.command)
    else:
        logger.warning("Commande %s terminée avec le statut %s.", args.command, status.value)
    return exit_code(status)


if __name__ == "__main__":
    sys.exit(main())
