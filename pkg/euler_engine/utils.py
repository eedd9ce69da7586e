# euler_engine/utils.py
"""
Small utilities: a process-local LRU cache for realizations and signature
enumerations, cache keys, and Farey fractions for angle snapping.
"""

import logging
from collections import OrderedDict
from fractions import Fraction
from typing import Any, Dict, Hashable, List, Optional

logger = logging.getLogger(__name__)


# Bounded LRU cache; values must be immutable since callers share them
class SimpleLRUCache:
    def __init__(self, name: str, capacity: int = 1024):
        if capacity < 1:
            raise ValueError(f"cache capacity must be >= 1, got {capacity}")
        self.name = name
        self.capacity = capacity
        self.hits = 0
        self.misses = 0
        self._entries: "OrderedDict[Hashable, Any]" = OrderedDict()

    def get(self, key: Hashable) -> Optional[Any]:
        try:
            value = self._entries[key]
        except KeyError:
            self.misses += 1
            return None
        self.hits += 1
        self._entries.move_to_end(key)
        return value

    def set(self, key: Hashable, value: Any) -> None:
        self._entries[key] = value
        self._entries.move_to_end(key)
        while len(self._entries) > self.capacity:
            evicted, _ = self._entries.popitem(last=False)
            logger.debug("%s cache evicted %s", self.name, evicted)

    def stats(self) -> Dict[str, int]:
        return {"size": len(self._entries), "hits": self.hits, "misses": self.misses}

    def __len__(self) -> int:
        return len(self._entries)

    def clear(self) -> None:
        self._entries.clear()
        self.hits = self.misses = 0


realization_cache = SimpleLRUCache("realization", capacity=128)
enumeration_cache = SimpleLRUCache("enumeration", capacity=16)


def make_cache_key(kind: str, *parts: Any) -> str:
    """e.g. make_cache_key("surface", 2) -> "surface::2"."""
    return "::".join([kind] + [str(p) for p in parts])


def clear_caches() -> None:
    for cache in (realization_cache, enumeration_cache):
        cache.clear()


def farey_fractions(qmax: int) -> List[Fraction]:
    """Reduced fractions p/q in (0, 1) with q <= qmax, ascending."""
    return sorted({Fraction(p, q) for q in range(2, qmax + 1) for p in range(1, q)})
