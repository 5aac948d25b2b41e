"""On-disk cache of homology tables.

Entries are JSON files named by diagram hash, flavor, window and format
version.  Writes go to a temporary file in the same directory followed by
``os.replace``, so concurrent readers never see partial files.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from pathlib import Path

log = logging.getLogger(__name__)

CACHE_ENV = "PROJKH_CACHE"
THREADS_ENV = "PROJKH_THREADS"
DEFAULT_DIR = ".projkh-cache"
FORMAT_VERSION = 1


def default_cache_dir() -> Path:
    return Path(os.environ.get(CACHE_ENV) or DEFAULT_DIR)


def thread_count() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        log.warning("ignoring %s=%r (not an integer)", THREADS_ENV, raw)
        return 1


def cache_key(diagram_hash: str, flavor: str, window: tuple[int, int] | None,
              kind: str = "table") -> str:
    win = "all" if window is None else f"{window[0]}_{window[1]}"
    return f"{diagram_hash}-{flavor}-{win}-{kind}-v{FORMAT_VERSION}"


class TableCache:
    """A directory of JSON blobs; ``enabled=False`` turns it into a no-op."""

    def __init__(self, root: str | Path | None = None, enabled: bool = True):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.enabled = enabled
        self.hits = self.misses = 0

    def path(self, key: str) -> Path:
        return self.root / f"{key}.json"

    def get(self, key: str) -> dict | None:
        if not self.enabled:
            return None
        p = self.path(key)
        try:
            with open(p) as fh:
                obj = json.load(fh)
        except FileNotFoundError:
            self.misses += 1
            return None
        except (OSError, json.JSONDecodeError) as exc:
            log.warning("dropping unreadable cache entry %s: %s", p, exc)
            self.misses += 1
            return None
        self.hits += 1
        return obj

    def put(self, key: str, obj: dict) -> None:
        if not self.enabled:
            return
        self.root.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".json")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(obj, fh, sort_keys=True)
            os.replace(tmp, self.path(key))
        except BaseException:
            try:
                os.unlink(tmp)
            except OSError:
                pass
            raise

    def stats(self) -> dict:
        return {"enabled": self.enabled, "root": str(self.root), "hits": self.hits,
                "misses": self.misses}
