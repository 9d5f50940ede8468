"""Aggregation scan models."""

from dataclasses import dataclass, field
from datetime import datetime

from app.core.exceptions import InvalidInterval
from app.models.namespace import RetentionPolicy
from app.models.quota import QuotaKey

UsageBucket = tuple[QuotaKey, RetentionPolicy]


@dataclass(frozen=True, slots=True)
class ScanReport:
    """Outcome of one full aggregation pass over the namespace."""

    scan_seq: int
    started_at: datetime
    finished_at: datetime
    entries_scanned: int
    usage: dict[UsageBucket, int] = field(default_factory=dict)

    def totals_by_key(self) -> dict[QuotaKey, dict[RetentionPolicy, int]]:
        """Regroup the bucket map as key -> policy -> bytes."""
        grouped: dict[QuotaKey, dict[RetentionPolicy, int]] = {}
        for (key, policy), total in self.usage.items():
            grouped.setdefault(key, {})[policy] = total
        return grouped


@dataclass(frozen=True, slots=True)
class ScanSchedule:
    """How often scans fire, in seconds between starts."""

    interval: float = 60.0
    enabled: bool = True

    def __post_init__(self) -> None:
        if not self.interval > 0:
            raise InvalidInterval(f"Scan interval must be positive, got {self.interval}")
