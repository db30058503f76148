"""Environment of named definitions shared by all modules."""

from __future__ import annotations

import os
import threading
from dataclasses import dataclass, field


def _cache_limit() -> int:
    try:
        return int(os.environ.get("SCHEMATA_CACHE_SIZE", "200000"))
    except ValueError:
        return 200000


class Memo(dict):
    """Dict that clears itself once it holds more than ``limit`` entries."""

    def __init__(self, limit: int):
        super().__init__()
        self.limit = limit

    def __setitem__(self, key, value):
        if self.limit and len(self) >= self.limit:
            self.clear()
        super().__setitem__(key, value)


@dataclass(eq=False)
class DefEnv:
    """Definitions in declaration order, keyed by name per category."""

    formulas: dict = field(default_factory=dict)
    proofs: dict = field(default_factory=dict)
    clause_defs: dict = field(default_factory=dict)
    res_defs: dict = field(default_factory=dict)
    ct_defs: dict = field(default_factory=dict)
    sequents: dict = field(default_factory=dict)
    clause_sets: dict = field(default_factory=dict)
    res_terms: dict = field(default_factory=dict)
    ct_terms: dict = field(default_factory=dict)

    def __post_init__(self):
        self._caches = {}
        self._lock = threading.Lock()

    CATEGORIES = ("formulas", "proofs", "clause_defs", "res_defs", "ct_defs",
                  "sequents", "clause_sets", "res_terms", "ct_terms")

    def cache(self, kind: str) -> Memo:
        with self._lock:
            if kind not in self._caches:
                self._caches[kind] = Memo(_cache_limit())
            return self._caches[kind]

    def clear_caches(self):
        with self._lock:
            self._caches.clear()

    def __eq__(self, other):
        if not isinstance(other, DefEnv):
            return NotImplemented
        return all(list(getattr(self, c).items()) == list(getattr(other, c).items())
                   for c in self.CATEGORIES)

    def merged(self, other: "DefEnv") -> "DefEnv":
        env = DefEnv()
        for c in self.CATEGORIES:
            getattr(env, c).update(getattr(self, c))
            getattr(env, c).update(getattr(other, c))
        return env
