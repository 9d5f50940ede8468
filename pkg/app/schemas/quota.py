"""Quota schemas for request/response validation."""

from pydantic import ConfigDict, Field

from app.models import Quota, QuotaLimits, RetentionPolicy, ScopeKind
from app.schemas import CamelModel

_POLICY_FIELDS = {
    "custodial_limit": RetentionPolicy.CUSTODIAL,
    "replica_limit": RetentionPolicy.REPLICA,
    "output_limit": RetentionPolicy.OUTPUT,
}


class QuotaLimitsIn(CamelModel):
    """Body of POST/PATCH on a quota. ``null`` sets a policy to unlimited."""

    model_config = ConfigDict(extra="forbid")

    custodial_limit: int | None = Field(None, ge=0, description="CUSTODIAL ceiling in bytes")
    replica_limit: int | None = Field(None, ge=0, description="REPLICA ceiling in bytes")
    output_limit: int | None = Field(None, ge=0, description="OUTPUT ceiling in bytes")

    def to_limits(self) -> QuotaLimits:
        return QuotaLimits(
            replica_limit=self.replica_limit,
            custodial_limit=self.custodial_limit,
            output_limit=self.output_limit,
        )

    def to_changes(self) -> dict[RetentionPolicy, int | None]:
        """Only the fields the client actually sent."""
        return {
            _POLICY_FIELDS[name]: value
            for name, value in self.model_dump(exclude_unset=True).items()
            if name in _POLICY_FIELDS
        }


class QuotaJson(CamelModel):
    """Limits and last-scan usage for one user or group."""

    id: int
    type: ScopeKind
    custodial_limit: int | None = None
    replica_limit: int | None = None
    output_limit: int | None = None
    custodial_space_used: int = 0
    replica_space_used: int = 0
    output_space_used: int = 0
    as_of_scan: int = 0

    @classmethod
    def from_quota(cls, quota: Quota) -> "QuotaJson":
        return cls(
            id=quota.key.id,
            type=quota.key.kind,
            custodial_limit=quota.limits.custodial_limit,
            replica_limit=quota.limits.replica_limit,
            output_limit=quota.limits.output_limit,
            custodial_space_used=quota.usage.custodial_used,
            replica_space_used=quota.usage.replica_used,
            output_space_used=quota.usage.output_used,
            as_of_scan=quota.usage.as_of_scan,
        )
