"""Namespace entry models."""

from dataclasses import dataclass
from enum import Enum

ROOT_ID = 1


class RetentionPolicy(str, Enum):
    """Durability class of a file; the quota accounting dimension."""

    REPLICA = "REPLICA"
    CUSTODIAL = "CUSTODIAL"
    OUTPUT = "OUTPUT"


class AccessLatency(str, Enum):
    """Availability class of a file. Carried, never accounted."""

    ONLINE = "ONLINE"
    NEARLINE = "NEARLINE"


@dataclass(frozen=True, slots=True)
class FileEntry:
    """One file in the namespace.

    Instances are immutable; ``commit_size`` replaces the stored entry.
    """

    id: int
    parent_id: int
    name: str
    uid: int
    gid: int
    size_bytes: int
    retention_policy: RetentionPolicy
    access_latency: AccessLatency
    created_at: int

    @property
    def is_file(self) -> bool:
        return True


@dataclass(frozen=True, slots=True)
class DirectoryEntry:
    """A directory. The root is its own parent."""

    id: int
    parent_id: int
    name: str
    uid: int
    gid: int
    default_retention_policy: RetentionPolicy | None = None
    default_access_latency: AccessLatency | None = None

    @property
    def is_file(self) -> bool:
        return False

    @property
    def is_root(self) -> bool:
        return self.id == ROOT_ID


Entry = FileEntry | DirectoryEntry


def make_root() -> DirectoryEntry:
    """Build the root directory with the REPLICA/ONLINE fallbacks."""
    return DirectoryEntry(
        id=ROOT_ID,
        parent_id=ROOT_ID,
        name="",
        uid=0,
        gid=0,
        default_retention_policy=RetentionPolicy.REPLICA,
        default_access_latency=AccessLatency.ONLINE,
    )
