"""Quota models: keys, limits, usage and the cached Quota value."""

from dataclasses import dataclass, field, replace
from enum import Enum

from app.models.namespace import RetentionPolicy


class ScopeKind(str, Enum):
    """Quota subject kind."""

    USER = "user"
    GROUP = "group"


@dataclass(frozen=True, slots=True, order=True)
class QuotaKey:
    kind: ScopeKind
    id: int

    def __str__(self) -> str:
        return f"{self.kind.value}:{self.id}"


@dataclass(frozen=True, slots=True)
class QuotaLimits:
    """Byte ceilings per retention policy. ``None`` means unlimited."""

    replica_limit: int | None = None
    custodial_limit: int | None = None
    output_limit: int | None = None

    def limit_for(self, policy: RetentionPolicy) -> int | None:
        return getattr(self, LIMIT_FIELDS[policy])

    def with_changes(self, changes: "dict[RetentionPolicy, int | None]") -> "QuotaLimits":
        """Return a copy where only the supplied policies are replaced."""
        return replace(self, **{LIMIT_FIELDS[p]: v for p, v in changes.items()})

    def values(self) -> tuple[int | None, ...]:
        return (self.replica_limit, self.custodial_limit, self.output_limit)


@dataclass(frozen=True, slots=True)
class QuotaUsage:
    """Aggregated bytes per retention policy as of one scan."""

    replica_used: int = 0
    custodial_used: int = 0
    output_used: int = 0
    as_of_scan: int = 0

    def used_for(self, policy: RetentionPolicy) -> int:
        return getattr(self, USAGE_FIELDS[policy])

    @classmethod
    def from_totals(cls, totals: dict[RetentionPolicy, int], as_of_scan: int) -> "QuotaUsage":
        return cls(
            **{USAGE_FIELDS[p]: totals.get(p, 0) for p in RetentionPolicy},
            as_of_scan=as_of_scan,
        )


@dataclass(frozen=True, slots=True)
class Quota:
    """Limits plus usage for one key: the value type of the quota cache."""

    key: QuotaKey
    limits: QuotaLimits = field(default_factory=QuotaLimits)
    usage: QuotaUsage = field(default_factory=QuotaUsage)
    has_limits: bool = False

    def is_over(self, policy: RetentionPolicy) -> bool:
        """At-limit counts as over: a full scope cannot grow."""
        limit = self.limits.limit_for(policy)
        return limit is not None and self.usage.used_for(policy) >= limit


@dataclass(frozen=True, slots=True)
class QuotaDecision:
    """Outcome of a create-time quota check."""

    allowed: bool
    reason: str | None = None
    scope: QuotaKey | None = None


ALLOW = QuotaDecision(allowed=True)

LIMIT_FIELDS: dict[RetentionPolicy, str] = {
    RetentionPolicy.REPLICA: "replica_limit",
    RetentionPolicy.CUSTODIAL: "custodial_limit",
    RetentionPolicy.OUTPUT: "output_limit",
}

USAGE_FIELDS: dict[RetentionPolicy, str] = {
    RetentionPolicy.REPLICA: "replica_used",
    RetentionPolicy.CUSTODIAL: "custodial_used",
    RetentionPolicy.OUTPUT: "output_used",
}
