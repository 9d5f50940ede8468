"""Single-rooted namespace of directories and file entries."""

import itertools
import threading
from collections.abc import Iterable, Iterator
from dataclasses import replace
from typing import Protocol

from app.core.exceptions import (
    AlreadyExists,
    DirectoryNotEmpty,
    InvalidPath,
    NotAFile,
    NotFound,
    QuotaExceeded,
)
from app.database import Journal, RecordKind
from app.models import (
    ROOT_ID,
    AccessLatency,
    AuthContext,
    DirectoryEntry,
    Entry,
    FileEntry,
    QuotaDecision,
    RetentionPolicy,
)
from app.models.namespace import make_root
from app.schemas.namespace import EntryJson
from app.services.auth import require_authenticated


class QuotaChecker(Protocol):
    def check(self, uid: int, gid: int, retention_policy: RetentionPolicy) -> QuotaDecision: ...


def split_path(path: str) -> list[str]:
    """Split an absolute path into components; ``/`` gives ``[]``."""
    if not path.startswith("/"):
        raise InvalidPath(f"Path must be absolute: {path!r}")
    if path == "/":
        return []
    parts = path[1:].split("/")
    for part in parts:
        if part in ("", ".", ".."):
            raise InvalidPath(f"Invalid path component in {path!r}")
    return parts


class Namespace:
    """In-memory namespace with write-ahead journaling.

    Every mutation takes ``_lock``; readers of ``iterate_entries`` get a
    copy taken under the lock, so a scan never holds it while aggregating.
    """

    def __init__(self, quota: QuotaChecker | None = None, journal: Journal | None = None) -> None:
        self._quota = quota
        self._journal = journal
        self._lock = threading.RLock()
        root = make_root()
        self._entries: dict[int, Entry] = {ROOT_ID: root}
        self._children: dict[int, dict[str, int]] = {ROOT_ID: {}}
        self._files: dict[int, FileEntry] = {}
        self._ids = itertools.count(ROOT_ID + 1)
        self._created = itertools.count(1)
        # Namespace-wide passes; create_entry must never add to this.
        self.traversals = 0

    def __len__(self) -> int:
        return len(self._files)

    # -- mutations -------------------------------------------------------

    def create_entry(
        self,
        path: str,
        uid: int,
        gid: int,
        retention_policy: RetentionPolicy | None = None,
        access_latency: AccessLatency | None = None,
        *,
        caller: AuthContext,
    ) -> FileEntry:
        """Create an empty file after the quota check admits it."""
        require_authenticated(caller)
        *parent_parts, name = self._split_leaf(path)
        with self._lock:
            parent = self._resolve_directory(parent_parts, path)
            if name in self._children[parent.id]:
                raise AlreadyExists(f"Entry {path} already exists")
            policy = retention_policy or self._inherited_policy(parent)
            latency = access_latency or self._inherited_latency(parent)

            if self._quota is not None:
                decision = self._quota.check(uid, gid, policy)
                if not decision.allowed:
                    raise QuotaExceeded()

            entry = FileEntry(
                id=next(self._ids),
                parent_id=parent.id,
                name=name,
                uid=uid,
                gid=gid,
                size_bytes=0,
                retention_policy=policy,
                access_latency=latency,
                created_at=next(self._created),
            )
            self._record(entry)
            self._insert(entry)
            return entry

    def make_directory(
        self,
        path: str,
        uid: int,
        gid: int,
        default_retention_policy: RetentionPolicy | None = None,
        default_access_latency: AccessLatency | None = None,
        *,
        caller: AuthContext,
    ) -> DirectoryEntry:
        """Create a directory. Directories have no size and skip the quota check."""
        require_authenticated(caller)
        *parent_parts, name = self._split_leaf(path)
        with self._lock:
            parent = self._resolve_directory(parent_parts, path)
            if name in self._children[parent.id]:
                raise AlreadyExists(f"Entry {path} already exists")
            entry = DirectoryEntry(
                id=next(self._ids),
                parent_id=parent.id,
                name=name,
                uid=uid,
                gid=gid,
                default_retention_policy=default_retention_policy,
                default_access_latency=default_access_latency,
            )
            self._record(entry)
            self._insert(entry)
            return entry

    def commit_size(self, entry_id: int, size_bytes: int) -> FileEntry:
        """Record the final size of an upload. Quota usage is left alone."""
        if size_bytes < 0:
            raise ValueError("size_bytes must be non-negative")
        with self._lock:
            entry = self._entries.get(entry_id)
            if entry is None:
                raise NotFound(f"Entry {entry_id} not found")
            if not isinstance(entry, FileEntry):
                raise NotAFile(f"Entry {entry_id} is a directory")
            updated = replace(entry, size_bytes=size_bytes)
            self._record(updated)
            self._entries[entry_id] = updated
            self._files[entry_id] = updated
            return updated

    def remove_entry(self, path: str, *, caller: AuthContext) -> Entry:
        """Remove a file or an empty directory. Usage drops at the next scan."""
        require_authenticated(caller)
        parts = split_path(path)
        if not parts:
            raise InvalidPath("The root directory cannot be removed")
        with self._lock:
            entry = self._resolve(parts, path)
            if isinstance(entry, DirectoryEntry) and self._children[entry.id]:
                raise DirectoryNotEmpty(f"Directory {path} is not empty")
            if self._journal is not None:
                self._journal.append(RecordKind.NS_REMOVE, {"id": entry.id})
            del self._children[entry.parent_id][entry.name]
            del self._entries[entry.id]
            self._files.pop(entry.id, None)
            self._children.pop(entry.id, None)
            return entry

    # -- reads -----------------------------------------------------------

    def stat(self, path: str) -> Entry:
        parts = split_path(path)
        with self._lock:
            return self._resolve(parts, path)

    def get(self, entry_id: int) -> Entry:
        with self._lock:
            entry = self._entries.get(entry_id)
        if entry is None:
            raise NotFound(f"Entry {entry_id} not found")
        return entry

    def list_directory(self, path: str) -> list[Entry]:
        """Children of a directory, sorted by name."""
        parts = split_path(path)
        with self._lock:
            directory = self._resolve_directory(parts, path)
            children = self._children[directory.id]
            return [self._entries[children[name]] for name in sorted(children)]

    def iterate_entries(self) -> Iterator[FileEntry]:
        """Every file entry once, as of the moment of the call."""
        with self._lock:
            self.traversals += 1
            snapshot = list(self._files.values())
        return iter(snapshot)

    def entries(self) -> dict[int, Entry]:
        """All non-root entries by id."""
        with self._lock:
            return {k: v for k, v in self._entries.items() if k != ROOT_ID}

    def restore(self, entries: Iterable[Entry]) -> None:
        """Rebuild the tree from replayed entries."""
        with self._lock:
            self._entries = {ROOT_ID: make_root()}
            self._children = {ROOT_ID: {}}
            self._files = {}
            restored = sorted(entries, key=lambda e: e.id)
            for entry in restored:
                self._entries[entry.id] = entry
                if isinstance(entry, DirectoryEntry):
                    self._children.setdefault(entry.id, {})
                else:
                    self._files[entry.id] = entry
            for entry in restored:
                self._children.setdefault(entry.parent_id, {})[entry.name] = entry.id
            max_id = max((e.id for e in restored), default=ROOT_ID)
            max_created = max((e.created_at for e in self._files.values()), default=0)
            self._ids = itertools.count(max_id + 1)
            self._created = itertools.count(max_created + 1)

    # -- helpers ---------------------------------------------------------

    @staticmethod
    def _split_leaf(path: str) -> list[str]:
        parts = split_path(path)
        if not parts:
            raise AlreadyExists("The root directory already exists")
        return parts

    def _resolve(self, parts: list[str], path: str) -> Entry:
        current: Entry = self._entries[ROOT_ID]
        for part in parts:
            children = self._children.get(current.id)
            if children is None or part not in children:
                raise NotFound(f"Path {path} not found")
            current = self._entries[children[part]]
        return current

    def _resolve_directory(self, parts: list[str], path: str) -> DirectoryEntry:
        entry = self._resolve(parts, path)
        if not isinstance(entry, DirectoryEntry):
            raise NotFound(f"Parent of {path} is not a directory")
        return entry

    def _ancestors(self, directory: DirectoryEntry) -> Iterator[DirectoryEntry]:
        current = directory
        while True:
            yield current
            if current.id == ROOT_ID:
                return
            parent = self._entries[current.parent_id]
            assert isinstance(parent, DirectoryEntry)
            current = parent

    def _inherited_policy(self, parent: DirectoryEntry) -> RetentionPolicy:
        for directory in self._ancestors(parent):
            if directory.default_retention_policy is not None:
                return directory.default_retention_policy
        return RetentionPolicy.REPLICA

    def _inherited_latency(self, parent: DirectoryEntry) -> AccessLatency:
        for directory in self._ancestors(parent):
            if directory.default_access_latency is not None:
                return directory.default_access_latency
        return AccessLatency.ONLINE

    def _record(self, entry: Entry) -> None:
        if self._journal is not None:
            self._journal.append(RecordKind.NS_ENTRY, EntryJson.from_entry(entry).to_wire())

    def _insert(self, entry: Entry) -> None:
        self._entries[entry.id] = entry
        self._children[entry.parent_id][entry.name] = entry.id
        if isinstance(entry, FileEntry):
            self._files[entry.id] = entry
        else:
            self._children[entry.id] = {}
