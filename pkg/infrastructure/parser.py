# infrastructure/parser.py

from __future__ import annotations

import logging
import re
from pathlib import Path
from typing import Any, Dict, List, Tuple

from pydantic import ValidationError

from domain.document import (
    ArrowSpec,
    AutomorphismSpec,
    DocumentValidationError,
    InputDocument,
    RelationSpec,
    SliceSpec,
    TermSpec,
)
from domain.slices.slice import split_selectors

logger = logging.getLogger(__name__)


class DocumentParseError(ValueError):
    """
    Exception fonctionnelle : document illisible. Porte la ligne et la colonne
    (à partir de 1, 0 si inconnue).
    """

    def __init__(self, message: str, line: int = 0, column: int = 0) -> None:
        self.message = message
        self.line = line
        self.column = column
        where = f"ligne {line}, colonne {column}: " if line else ""
        super().__init__(f"{where}{message}")


_IDENT = r"[A-Za-z_][A-Za-z0-9_']*"
_VERTEX = r"[A-Za-z0-9_.']+"
_COEFF = r"\d+(?:/\d+)?"

_FIELD_RE = re.compile(r"field\s+(?P<spec>.+)$")
_VERTICES_RE = re.compile(r"vertices\s*:\s*(?P<ids>.*)$")
_ARROW_RE = re.compile(rf"arrow\s+(?P<name>{_IDENT})\s*:\s*(?P<src>{_VERTEX})\s*->\s*(?P<tgt>{_VERTEX})\s*$")
_RELATION_RE = re.compile(r"relation\b\s*(?P<body>.*)$")
_AUTO_RE = re.compile(rf"automorphism\s+(?P<name>{_IDENT})\s*\{{(?P<rest>.*)$")
_SLICE_RE = re.compile(rf"slice\s+(?P<name>{_IDENT})\s*:\s*(?P<body>.+)$")
_NAME_RE = re.compile(r"name\s+(?P<name>.+)$")
_TERM_RE = re.compile(
    rf"\s*(?P<sign>[+-])?\s*(?:(?P<coeff>{_COEFF})\s*\*\s*)?(?P<path>{_IDENT}(?:\s*\*\s*{_IDENT})*)\s*"
)
_VERTEX_MAP_RE = re.compile(rf"vertex\s+(?P<src>{_VERTEX})\s*->\s*(?P<tgt>{_VERTEX})\s*$")
_ARROW_MAP_RE = re.compile(rf"arrow\s+(?P<name>{_IDENT})\s*->\s*(?P<body>.+)$")


def _strip_comment(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def parse_terms(body: str, line: int, column: int) -> List[TermSpec]:
    """`[coeff*] a*b (('+'|'-') [coeff*] c*d)*` ; le signe s'applique au coefficient."""
    terms: List[TermSpec] = []
    pos = 0
    text = body.rstrip()
    if not text.strip():
        raise DocumentParseError("combinaison de chemins vide", line, column)
    while pos < len(text):
        match = _TERM_RE.match(text, pos)
        if match is None or match.end() == pos:
            raise DocumentParseError(f"terme illisible: {text[pos:].strip()!r}", line, column + pos)
        sign = match.group("sign")
        if terms and sign is None:
            raise DocumentParseError("'+' ou '-' attendu entre deux termes", line, column + match.start("path"))
        coefficient = match.group("coeff") or "1"
        if sign == "-":
            coefficient = f"-{coefficient}"
        path = [p.strip() for p in match.group("path").split("*")]
        terms.append(TermSpec(coefficient=coefficient, path=path))
        pos = match.end()
    return terms


class _Reader:
    """Analyse ligne à ligne ; un bloc `automorphism` peut s'étendre jusqu'à `}`."""

    def __init__(self, text: str, name: str) -> None:
        self.lines = text.splitlines()
        self.data: Dict[str, Any] = {
            "name": name,
            "arrows": [],
            "relations": [],
            "automorphisms": [],
            "slices": [],
        }
        self.field_line = 0

    def run(self) -> Dict[str, Any]:
        index = 0
        while index < len(self.lines):
            line_no = index + 1
            raw = self.lines[index]
            content = _strip_comment(raw)
            stripped = content.strip()
            column = len(content) - len(content.lstrip()) + 1
            index += 1
            if not stripped:
                continue
            keyword = stripped.split(None, 1)[0].rstrip(":")
            if keyword == "automorphism":
                index = self._automorphism(stripped, line_no, column, index)
                continue
            handler = {
                "field": self._field,
                "vertices": self._vertices,
                "arrow": self._arrow,
                "relation": self._relation,
                "slice": self._slice,
                "name": self._name,
            }.get(keyword)
            if handler is None:
                raise DocumentParseError(f"mot-clé inconnu: {keyword!r}", line_no, column)
            handler(stripped, line_no, column)
        if "vertices" not in self.data:
            raise DocumentParseError("déclaration `vertices:` manquante", len(self.lines), 1)
        return self.data

    def _field(self, text: str, line: int, column: int) -> None:
        match = _FIELD_RE.match(text)
        if match is None:
            raise DocumentParseError("attendu `field Q` ou `field GF(p)`", line, column)
        if self.field_line:
            raise DocumentParseError(f"corps déjà déclaré ligne {self.field_line}", line, column)
        self.data["field"] = match.group("spec").strip()
        self.field_line = line

    def _vertices(self, text: str, line: int, column: int) -> None:
        match = _VERTICES_RE.match(text)
        if match is None:
            raise DocumentParseError("attendu `vertices: <id>+`", line, column)
        ids = [v for v in re.split(r"[\s,]+", match.group("ids").strip()) if v]
        for v in ids:
            if not re.fullmatch(_VERTEX, v):
                raise DocumentParseError(f"identifiant de sommet invalide: {v!r}", line, column + text.find(v))
        if not ids:
            raise DocumentParseError("aucun sommet déclaré", line, column)
        self.data.setdefault("vertices", []).extend(ids)

    def _arrow(self, text: str, line: int, column: int) -> None:
        match = _ARROW_RE.match(text)
        if match is None:
            raise DocumentParseError("attendu `arrow <nom>: <sommet> -> <sommet>`", line, column)
        self.data["arrows"].append(
            ArrowSpec(name=match.group("name"), source=match.group("src"), target=match.group("tgt"), line=line)
        )

    def _relation(self, text: str, line: int, column: int) -> None:
        match = _RELATION_RE.match(text)
        body = match.group("body") if match else ""
        terms = parse_terms(body, line, column + match.start("body") if match else column)
        self.data["relations"].append(RelationSpec(terms=terms, line=line))

    def _slice(self, text: str, line: int, column: int) -> None:
        match = _SLICE_RE.match(text)
        if match is None:
            raise DocumentParseError("attendu `slice <nom>: <sélecteur>, ...`", line, column)
        self.data["slices"].append(
            SliceSpec(name=match.group("name"), selectors=split_selectors(match.group("body")), line=line)
        )

    def _name(self, text: str, line: int, column: int) -> None:
        match = _NAME_RE.match(text)
        if match is None:
            raise DocumentParseError("attendu `name <texte>`", line, column)
        self.data["name"] = match.group("name").strip()

    def _automorphism(self, text: str, line: int, column: int, index: int) -> int:
        match = _AUTO_RE.match(text)
        if match is None:
            raise DocumentParseError("attendu `automorphism <nom> { ... }`", line, column)
        spec = AutomorphismSpec(name=match.group("name"), line=line)
        pending: List[Tuple[str, int, int]] = []
        rest = match.group("rest")
        rest_column = column + match.start("rest")
        current_line = line
        closed = False
        while True:
            body = rest
            if "}" in body:
                body, after = body.split("}", 1)
                if after.strip():
                    raise DocumentParseError("texte après `}`", current_line, rest_column + len(body) + 1)
                closed = True
            offset = 0
            for entry in body.split(";"):
                if entry.strip():
                    lead = len(entry) - len(entry.lstrip())
                    pending.append((entry.strip(), current_line, rest_column + offset + lead))
                offset += len(entry) + 1
            if closed:
                break
            if index >= len(self.lines):
                raise DocumentParseError(f"bloc automorphism {spec.name} non fermé", line, column)
            current_line = index + 1
            raw = _strip_comment(self.lines[index])
            rest = raw
            rest_column = 1
            index += 1
        for entry, entry_line, entry_column in pending:
            self._automorphism_entry(spec, entry, entry_line, entry_column)
        self.data["automorphisms"].append(spec)
        return index

    def _automorphism_entry(self, spec: AutomorphismSpec, entry: str, line: int, column: int) -> None:
        vertex = _VERTEX_MAP_RE.match(entry)
        if vertex is not None:
            src = vertex.group("src")
            if src in spec.vertices:
                raise DocumentParseError(f"image du sommet {src} donnée deux fois", line, column)
            spec.vertices[src] = vertex.group("tgt")
            return
        arrow = _ARROW_MAP_RE.match(entry)
        if arrow is not None:
            name = arrow.group("name")
            if name in spec.arrows:
                raise DocumentParseError(f"image de la flèche {name} donnée deux fois", line, column)
            spec.arrows[name] = parse_terms(arrow.group("body"), line, column + arrow.start("body"))
            return
        raise DocumentParseError(f"entrée d'automorphisme illisible: {entry!r}", line, column)


def _validation_position(exc: ValidationError) -> Tuple[str, int]:
    for error in exc.errors():
        cause = (error.get("ctx") or {}).get("error")
        if isinstance(cause, DocumentValidationError):
            return str(cause), cause.line
    first = exc.errors()[0]
    where = ".".join(str(part) for part in first.get("loc", ()))
    return f"{where}: {first.get('msg')}" if where else str(first.get("msg")), 0


def parse(text: str, name: str = "algèbre") -> InputDocument:
    """Lit un document texte et renvoie l'InputDocument validé."""
    data = _Reader(text, name).run()
    try:
        document = InputDocument(**data)
    except ValidationError as exc:
        message, line = _validation_position(exc)
        raise DocumentParseError(message, line, 1 if line else 0) from exc
    logger.debug(
        "Document %s lu : %d sommets, %d flèches, %d relations.",
        document.name, len(document.vertices), len(document.arrows), len(document.relations),
    )
    return document


def parse_file(path: str | Path) -> InputDocument:
    file_path = Path(path)
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as exc:
        logger.error("Lecture impossible de %s: %s", file_path, exc)
        raise DocumentParseError(f"fichier illisible {file_path}: {exc}") from exc
    return parse(text, name=file_path.stem)
