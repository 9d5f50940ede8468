"""Namespace schemas for request/response validation."""

from typing import Literal

from pydantic import ConfigDict, Field

from app.models import (
    AccessLatency,
    DirectoryEntry,
    Entry,
    FileEntry,
    QuotaDecision,
    RetentionPolicy,
)
from app.schemas import CamelModel


class EntryJson(CamelModel):
    """A file or directory as returned by the API and stored in the journal."""

    id: int
    parent_id: int
    name: str
    kind: Literal["file", "directory"]
    uid: int
    gid: int
    size_bytes: int | None = None
    retention_policy: RetentionPolicy | None = None
    access_latency: AccessLatency | None = None
    created_at: int | None = None
    default_retention_policy: RetentionPolicy | None = None
    default_access_latency: AccessLatency | None = None

    @classmethod
    def from_entry(cls, entry: Entry) -> "EntryJson":
        if isinstance(entry, FileEntry):
            return cls(
                id=entry.id,
                parent_id=entry.parent_id,
                name=entry.name,
                kind="file",
                uid=entry.uid,
                gid=entry.gid,
                size_bytes=entry.size_bytes,
                retention_policy=entry.retention_policy,
                access_latency=entry.access_latency,
                created_at=entry.created_at,
            )
        return cls(
            id=entry.id,
            parent_id=entry.parent_id,
            name=entry.name,
            kind="directory",
            uid=entry.uid,
            gid=entry.gid,
            default_retention_policy=entry.default_retention_policy,
            default_access_latency=entry.default_access_latency,
        )

    def to_entry(self) -> Entry:
        if self.kind == "file":
            assert self.retention_policy is not None and self.access_latency is not None
            return FileEntry(
                id=self.id,
                parent_id=self.parent_id,
                name=self.name,
                uid=self.uid,
                gid=self.gid,
                size_bytes=self.size_bytes or 0,
                retention_policy=self.retention_policy,
                access_latency=self.access_latency,
                created_at=self.created_at or 0,
            )
        return DirectoryEntry(
            id=self.id,
            parent_id=self.parent_id,
            name=self.name,
            uid=self.uid,
            gid=self.gid,
            default_retention_policy=self.default_retention_policy,
            default_access_latency=self.default_access_latency,
        )

    def to_wire(self) -> dict:
        return self.model_dump(mode="json", by_alias=True, exclude_none=True)


class FileCreate(CamelModel):
    """Body of PUT /ns/files/{path}. Omitted uid/gid default to the caller's."""

    model_config = ConfigDict(extra="forbid")

    uid: int | None = Field(None, ge=0)
    gid: int | None = Field(None, ge=0)
    policy: RetentionPolicy | None = None
    access_latency: AccessLatency | None = None
    size: int | None = Field(None, ge=0, description="Committed right after creation")


class SizeCommit(CamelModel):
    model_config = ConfigDict(extra="forbid")

    size: int = Field(..., ge=0)


class DirectoryCreate(CamelModel):
    model_config = ConfigDict(extra="forbid")

    uid: int | None = Field(None, ge=0)
    gid: int | None = Field(None, ge=0)
    default_retention_policy: RetentionPolicy | None = None
    default_access_latency: AccessLatency | None = None


class CheckJson(CamelModel):
    allowed: bool
    reason: str | None = None
    scope: str | None = None

    @classmethod
    def from_decision(cls, decision: QuotaDecision) -> "CheckJson":
        return cls(
            allowed=decision.allowed,
            reason=decision.reason,
            scope=str(decision.scope) if decision.scope else None,
        )
