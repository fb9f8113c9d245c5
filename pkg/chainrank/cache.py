"""Content-addressed JSON cache for rank reports."""

from __future__ import annotations

import hashlib
import json
import logging
import os
from collections.abc import Iterable
from pathlib import Path
from typing import Any

from .const import CACHE_DIR_ENV, CACHE_FORMAT_VERSION
from .marking import MarkedGroup
from .models import InvariantId

LOGGER = logging.getLogger(__name__)


def stable_dumps(data: Any) -> str:
    """Serialize with sorted keys and no whitespace."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"))


def default_cache_dir() -> Path:
    """Return ``$CHAINRANK_CACHE_DIR`` or ``~/.cache/chainrank``."""
    configured = os.environ.get(CACHE_DIR_ENV)
    if configured:
        return Path(configured)
    return Path.home() / ".cache" / "chainrank"


def cache_key(
    marked: MarkedGroup,
    invariants: Iterable[InvariantId],
    expression: str | None = None,
) -> str:
    """Hash the element table, the carrier, the marking and the requested invariants."""
    data = {
        "version": CACHE_FORMAT_VERSION,
        "expression": expression,
        "degree": marked.group.degree,
        "elements": [list(perm) for perm in marked.group.elements],
        "carrier": list(marked.carrier.elements),
        "enumeration": list(marked.enumeration),
        "seed": marked.seed,
        "invariants": sorted(str(invariant) for invariant in invariants),
    }
    return hashlib.sha256(stable_dumps(data).encode()).hexdigest()


class ResultCache:
    """JSON files named by their cache key."""

    def __init__(self, root: Path | None = None) -> None:
        """Initialize, creating the directory lazily on first write."""
        self.root = root or default_cache_dir()

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def read(self, key: str) -> dict[str, Any] | None:
        """Return the cached payload or None."""
        path = self._path(key)
        if not path.exists():
            LOGGER.debug("Cache miss %s", key)
            return None
        try:
            payload: dict[str, Any] = json.loads(path.read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError):
            LOGGER.debug("Unreadable cache entry %s", key)
            return None
        LOGGER.debug("Cache hit %s", key)
        return payload

    def write(self, key: str, payload: dict[str, Any]) -> None:
        """Store a payload under its key."""
        self.root.mkdir(parents=True, exist_ok=True)
        self._path(key).write_text(stable_dumps(payload), encoding="utf-8")
