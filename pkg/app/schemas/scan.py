"""Scan report schemas."""

from datetime import datetime

from app.models import QuotaKey, RetentionPolicy, ScanReport, ScopeKind
from app.schemas import CamelModel


class UsageBucketJson(CamelModel):
    type: ScopeKind
    id: int
    retention_policy: RetentionPolicy
    bytes: int


class ScanUsageJson(CamelModel):
    """Per-bucket totals of one scan."""

    scan_seq: int
    usage: list[UsageBucketJson] = []

    @staticmethod
    def buckets(report: ScanReport) -> list[UsageBucketJson]:
        rows = [
            UsageBucketJson(type=key.kind, id=key.id, retention_policy=policy, bytes=total)
            for (key, policy), total in report.usage.items()
        ]
        rows.sort(key=lambda r: (r.type.value, str(r.id), r.retention_policy.value))
        return rows

    def usage_map(self) -> dict[tuple[QuotaKey, RetentionPolicy], int]:
        return {
            (QuotaKey(row.type, row.id), row.retention_policy): row.bytes for row in self.usage
        }


class ScanMarkJson(CamelModel):
    """Completion marker of one scan."""

    scan_seq: int
    started_at: datetime
    finished_at: datetime
    entries_scanned: int


class ScanReportJson(ScanMarkJson):
    usage: list[UsageBucketJson] = []

    @classmethod
    def from_report(cls, report: ScanReport) -> "ScanReportJson":
        return cls(
            scan_seq=report.scan_seq,
            started_at=report.started_at,
            finished_at=report.finished_at,
            entries_scanned=report.entries_scanned,
            usage=ScanUsageJson.buckets(report),
        )
