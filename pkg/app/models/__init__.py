"""Domain models package."""

from app.models.auth import ANONYMOUS, SYSTEM, AuthContext, Role
from app.models.namespace import (
    ROOT_ID,
    AccessLatency,
    DirectoryEntry,
    Entry,
    FileEntry,
    RetentionPolicy,
)
from app.models.quota import (
    ALLOW,
    Quota,
    QuotaDecision,
    QuotaKey,
    QuotaLimits,
    QuotaUsage,
    ScopeKind,
)
from app.models.scan import ScanReport, ScanSchedule, UsageBucket

__all__ = [
    "ALLOW",
    "ANONYMOUS",
    "ROOT_ID",
    "SYSTEM",
    "AccessLatency",
    "AuthContext",
    "DirectoryEntry",
    "Entry",
    "FileEntry",
    "Quota",
    "QuotaDecision",
    "QuotaKey",
    "QuotaLimits",
    "QuotaUsage",
    "RetentionPolicy",
    "Role",
    "ScanReport",
    "ScanSchedule",
    "ScopeKind",
    "UsageBucket",
]
