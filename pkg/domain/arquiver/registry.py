# domain/arquiver/registry.py

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from domain.modules.decomposition import fingerprint, is_isomorphic
from domain.modules.homology import is_injective_module, is_projective_module
from domain.modules.module import Module

logger = logging.getLogger(__name__)

# Priorités de nommage : la plus petite l'emporte.
NAME_PROJECTIVE = 0
NAME_SIMPLE = 1
NAME_RADICAL = 2
NAME_SOCLE_FACTOR = 3
NAME_INJECTIVE = 4
NAME_INJECTIVE_FACTOR = 5
NAME_NONE = 9


@dataclass
class RegistryEntry:
    module: Module
    name: str
    priority: int
    projective: bool
    injective: bool


class RegistryLimitError(RuntimeError):
    """Limite du registre atteinte (nombre de classes ou dimension)."""


class ModuleRegistry:
    """
    Classes d'isomorphisme d'indécomposables, insertion ou lecture sûres en
    concurrence (un seul verrou).
    """

    def __init__(self, max_modules: int, max_dim: int) -> None:
        self.max_modules = max_modules
        self.max_dim = max_dim
        self._entries: List[RegistryEntry] = []
        self._buckets: Dict[Tuple, List[int]] = {}
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._entries)

    def entry(self, index: int) -> RegistryEntry:
        return self._entries[index]

    def module(self, index: int) -> Module:
        return self._entries[index].module

    @property
    def entries(self) -> List[RegistryEntry]:
        return list(self._entries)

    def _find(self, m: Module, key: Tuple) -> Optional[int]:
        for index in self._buckets.get(key, []):
            if is_isomorphic(self._entries[index].module, m, indecomposable=True) is not None:
                return index
        return None

    def find(self, m: Module) -> Optional[int]:
        with self._lock:
            return self._find(m, fingerprint(m))

    def register(self, m: Module, name: str = "", priority: int = NAME_NONE) -> Tuple[int, bool]:
        """Renvoie (indice, nouveau) ; un meilleur nom remplace l'ancien."""
        key = fingerprint(m)
        with self._lock:
            index = self._find(m, key)
            if index is not None:
                entry = self._entries[index]
                if name and priority < entry.priority:
                    entry.name, entry.priority = name, priority
                return index, False
            if m.dim > self.max_dim:
                raise RegistryLimitError(f"module de dimension {m.dim} > {self.max_dim}")
            if len(self._entries) >= self.max_modules:
                raise RegistryLimitError(f"plus de {self.max_modules} classes d'indécomposables")
            entry = RegistryEntry(
                module=m,
                name=name if name else "",
                priority=priority if name else NAME_NONE,
                projective=is_projective_module(m),
                injective=is_injective_module(m),
            )
            self._entries.append(entry)
            index = len(self._entries) - 1
            self._buckets.setdefault(key, []).append(index)
            logger.debug("Nouvel indécomposable n°%d %s %s.", index, entry.name or "-", m.dim_vector)
            return index, True
