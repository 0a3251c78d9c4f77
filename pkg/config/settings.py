# config/settings.py

from __future__ import annotations

import logging
import os
from dataclasses import dataclass
from pathlib import Path

logger = logging.getLogger(__name__)


# Seules ces clés sont lues dans un .env ; le reste du fichier est ignoré.
_DOTENV_PREFIXES = ("ALGEBRA_", "LOG_LEVEL")


def _dotenv_candidates(env_file: str | Path | None) -> list[Path]:
    if env_file is not None:
        return [Path(env_file)]
    return [Path.cwd() / ".env", Path(__file__).resolve().parent.parent / ".env"]


def _parse_dotenv_line(raw_line: str) -> tuple[str, str] | None:
    line = raw_line.strip()
    if line.startswith("export "):
        line = line[len("export "):].lstrip()
    if not line or line.startswith("#") or "=" not in line:
        return None
    key, value = (part.strip() for part in line.split("=", 1))
    if len(value) >= 2 and value[0] == value[-1] and value[0] in "\"'":
        value = value[1:-1]
    return key, value


def _load_dotenv_if_present(env_file: str | Path | None = None) -> int:
    """
    Injecte dans l'environnement les variables ALGEBRA_* et LOG_LEVEL du
    premier `.env` trouvé (répertoire courant, puis racine du dépôt).

    Une variable déjà présente dans l'environnement n'est jamais écrasée.
    Renvoie le nombre de variables injectées.
    """
    env_path = next((p for p in _dotenv_candidates(env_file) if p.is_file()), None)
    if env_path is None:
        logger.debug("Pas de fichier .env, variables système seules.")
        return 0

    try:
        lines = env_path.read_text(encoding="utf-8").splitlines()
    except OSError as exc:
        logger.exception("Lecture de %s impossible.", env_path)
        raise RuntimeError(f"Erreur lors du chargement du fichier .env: {exc}") from exc

    injected = 0
    for line_no, raw_line in enumerate(lines, start=1):
        parsed = _parse_dotenv_line(raw_line)
        if parsed is None:
            continue
        key, value = parsed
        if not key.startswith(_DOTENV_PREFIXES):
            logger.debug("%s:%d : clé %s hors configuration, ignorée.", env_path.name, line_no, key)
            continue
        if key in os.environ:
            continue
        os.environ[key] = value
        injected += 1
    logger.debug("%d variable(s) injectée(s) depuis %s.", injected, env_path)
    return injected


@dataclass
class Settings:
    """
    Configuration centrale des calculs.

    - length_cap          : longueur maximale des chemins pour KQ/R
    - max_modules/max_dim : limites du tricotage
    - iso_*               : budget de la recherche d'isomorphismes
    - slice_*             : taille et budget de l'énumération des sections
    - split_attempts      : essais de scission d'idempotents
    - seed / threads      : graine des choix pseudo-aléatoires, workers
    """
    length_cap: int = 64
    max_modules: int = 512
    max_dim: int = 256
    iso_max_dim: int = 48
    iso_max_vertices: int = 6
    iso_max_nodes: int = 20000
    slice_max_size: int = 12
    slice_search_limit: int = 200000
    split_attempts: int = 5
    seed: int = 0
    threads: int = 1


# variable d'environnement -> (champ, valeur minimale)
_ENV_FIELDS = {
    "ALGEBRA_LENGTH_CAP": ("length_cap", 2),
    "ALGEBRA_MAX_MODULES": ("max_modules", 1),
    "ALGEBRA_MAX_DIM": ("max_dim", 1),
    "ALGEBRA_ISO_MAX_DIM": ("iso_max_dim", 1),
    "ALGEBRA_ISO_MAX_VERTICES": ("iso_max_vertices", 1),
    "ALGEBRA_ISO_MAX_NODES": ("iso_max_nodes", 1),
    "ALGEBRA_SLICE_MAX_SIZE": ("slice_max_size", 1),
    "ALGEBRA_SLICE_SEARCH_LIMIT": ("slice_search_limit", 1),
    "ALGEBRA_SPLIT_ATTEMPTS": ("split_attempts", 1),
    "ALGEBRA_SEED": ("seed", 0),
    "ALGEBRA_THREADS": ("threads", 1),
}


def _int_from_env(name: str, default: int, minimum: int) -> int:
    raw = os.getenv(name)
    if raw is None:
        return default
    if not raw.strip():
        logger.warning("%s est défini mais vide, valeur par défaut %d utilisée.", name, default)
        return default
    try:
        value = int(raw.strip())
    except ValueError:
        logger.warning("%s=%r n'est pas un entier, valeur par défaut %d utilisée.", name, raw, default)
        return default
    if value < minimum:
        logger.error("%s=%d invalide (minimum %d).", name, value, minimum)
        raise RuntimeError(f"{name} doit être ≥ {minimum} (reçu {value}).")
    return value


def load_settings() -> Settings:
    """
    Charge la configuration à partir des variables d'environnement
    ALGEBRA_* (toutes optionnelles).

    Lève RuntimeError en cas de valeur bloquante et loggue l'erreur.
    """
    logger.debug("Chargement des Settings depuis les variables d'environnement.")

    try:
        _load_dotenv_if_present()
    except Exception as env_exc:
        logger.error("Impossible de précharger le fichier .env: %s", env_exc, exc_info=True)
        raise

    try:
        defaults = Settings()
        values = {
            field_name: _int_from_env(env, getattr(defaults, field_name), minimum)
            for env, (field_name, minimum) in _ENV_FIELDS.items()
        }
        settings = Settings(**values)
        logger.debug("Settings chargés : %r", settings)
        return settings

    except RuntimeError:
        # Erreur fonctionnelle déjà logguée, on la propage telle quelle
        raise
    except Exception as exc:
        logger.exception("Erreur inattendue lors du chargement des Settings.")
        raise RuntimeError(
            f"Erreur inattendue lors du chargement de la configuration: {exc}"
        ) from exc
