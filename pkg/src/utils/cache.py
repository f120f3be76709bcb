"""
Memoization cache for Moduli Desk.
Builtin Lie algebras, GCAs, Artinian algebras, sites and group tables are built once
per process and shared, so everything stored here is treated as immutable.
"""
import threading
import time
from collections import Counter
from dataclasses import dataclass
from typing import Any, Callable, Dict, Optional

from src.config import Config
from src.utils.logging import logger


@dataclass(frozen=True)
class _Entry:
    value: Any
    namespace: str
    deadline: Optional[float] = None  # time.monotonic() seconds

    def stale(self) -> bool:
        return self.deadline is not None and time.monotonic() > self.deadline


class CacheManager:
    """
    Namespaced memo table keyed ``"<namespace>:<key>"``.

    Namespaces in use: ``builtin.lie``, ``builtin.gca``, ``builtin.artinian``,
    ``builtin.site`` and ``group``. One re-entrant lock guards the table, so the
    worker threads of ``parallel_map`` may resolve builtins concurrently.
    """

    def __init__(self):
        self._entries: Dict[str, _Entry] = {}
        self._lock = threading.RLock()
        self._hits = 0
        self._misses = 0

    @staticmethod
    def _get_namespace_key(namespace: str, key: str) -> str:
        return f"{namespace}:{key}"

    def _is_expired(self, entry: _Entry) -> bool:
        return entry.stale()

    def set(self, namespace: str, key: str, value: Any, expiry_minutes: Optional[int] = None) -> None:
        """
        Store ``value``; an ``expiry_minutes`` of None or 0 keeps it for the process lifetime.
        """
        deadline = time.monotonic() + 60 * expiry_minutes if expiry_minutes else None
        slot = self._get_namespace_key(namespace, key)
        with self._lock:
            self._entries[slot] = _Entry(value, namespace, deadline)
        logger.debug(f"cache store {slot}")

    def get(self, namespace: str, key: str) -> Optional[Any]:
        """The stored value, or None when absent or stale (stale entries are dropped)."""
        slot = self._get_namespace_key(namespace, key)
        with self._lock:
            entry = self._entries.get(slot)
            if entry is not None and self._is_expired(entry):
                del self._entries[slot]
                logger.debug(f"cache drop stale {slot}")
                entry = None
            if entry is None:
                self._misses += 1
                return None
            self._hits += 1
            return entry.value

    def get_or_create(self, namespace: str, key: str, factory: Callable[[], Any]) -> Any:
        """
        Memoized ``factory()``. With ``[cache] enabled = false`` every call builds afresh
        and nothing is stored.
        """
        if not Config.CACHE_ENABLED():
            return factory()
        value = self.get(namespace, key)
        if value is None:
            value = factory()
            self.set(namespace, key, value, Config.CACHE_EXPIRY_MINUTES() or None)
        return value

    def exists(self, namespace: str, key: str) -> bool:
        return self.get(namespace, key) is not None

    def delete(self, namespace: str, key: str) -> bool:
        with self._lock:
            return self._entries.pop(self._get_namespace_key(namespace, key), None) is not None

    def clear_namespace(self, namespace: str) -> int:
        """Drop every entry of ``namespace`` and return how many went."""
        with self._lock:
            doomed = [slot for slot, entry in self._entries.items() if entry.namespace == namespace]
            for slot in doomed:
                del self._entries[slot]
        logger.info(f"cleared {len(doomed)} cache entries from '{namespace}'")
        return len(doomed)

    def clear_all(self) -> int:
        with self._lock:
            count = len(self._entries)
            self._entries.clear()
            self._hits = self._misses = 0
        return count

    def get_stats(self) -> Dict[str, Any]:
        with self._lock:
            per_namespace = Counter(entry.namespace for entry in self._entries.values())
            return {
                'total_entries': len(self._entries),
                'namespaces': dict(per_namespace),
                'hits': self._hits,
                'misses': self._misses,
            }


cache_manager = CacheManager()
