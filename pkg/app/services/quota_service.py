"""Quota limits and the in-memory usage cache.

The cache is one immutable ``CacheGeneration`` held in a single attribute.
Writers build a new generation under ``_lock`` and publish it with one
assignment; ``check`` reads the attribute once and never locks.
"""

import threading
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field, replace
from types import MappingProxyType

from app.core.exceptions import AlreadyExists, InvalidLimit, NotFound, StaleReport
from app.database import Journal, RecordKind, StoreState, limit_payload
from app.models import (
    ALLOW,
    AuthContext,
    Quota,
    QuotaDecision,
    QuotaKey,
    QuotaLimits,
    QuotaUsage,
    RetentionPolicy,
    ScanReport,
    ScopeKind,
)
from app.schemas.scan import ScanMarkJson, ScanUsageJson
from app.services.auth import require_admin, require_authenticated


@dataclass(frozen=True, slots=True)
class CacheGeneration:
    """One published state of the ``QuotaKey -> Quota`` map."""

    scan_seq: int = 0
    quotas: Mapping[QuotaKey, Quota] = field(default_factory=lambda: MappingProxyType({}))
    usage_keys: frozenset[QuotaKey] = frozenset()


class QuotaEngine:
    """Owns limits, answers create-time checks and absorbs scan reports."""

    def __init__(self, journal: Journal | None = None) -> None:
        self._journal = journal
        self._lock = threading.Lock()
        self._limits: dict[QuotaKey, QuotaLimits] = {}
        self._cache = CacheGeneration()
        # Cache lookups made by check(); two per call.
        self.lookups = 0

    @property
    def scan_seq(self) -> int:
        return self._cache.scan_seq

    def snapshot(self) -> CacheGeneration:
        return self._cache

    def limits(self) -> dict[QuotaKey, QuotaLimits]:
        with self._lock:
            return dict(self._limits)

    # -- enforcement -----------------------------------------------------

    def check(self, uid: int, gid: int, retention_policy: RetentionPolicy) -> QuotaDecision:
        """Deny when the user or the group is at or over its limit for the policy."""
        quotas = self._cache.quotas
        user = quotas.get(QuotaKey(ScopeKind.USER, uid))
        group = quotas.get(QuotaKey(ScopeKind.GROUP, gid))
        self.lookups += 2
        for quota in (user, group):
            if quota is not None and quota.is_over(retention_policy):
                return QuotaDecision(
                    allowed=False,
                    reason=f"{quota.key} is over its {retention_policy.value} limit",
                    scope=quota.key,
                )
        return ALLOW

    # -- limits CRUD -----------------------------------------------------

    def put_quota(self, key: QuotaKey, limits: QuotaLimits, caller: AuthContext) -> Quota:
        require_admin(caller)
        _validate(limits.values())
        with self._lock:
            if key in self._limits:
                raise AlreadyExists(f"Quota for {key} already exists")
            return self._store_limits(key, limits)

    def modify_quota(
        self,
        key: QuotaKey,
        changes: dict[RetentionPolicy, int | None],
        caller: AuthContext,
    ) -> Quota:
        """Change only the supplied policies; ``None`` means unlimited."""
        require_admin(caller)
        _validate(changes.values())
        with self._lock:
            current = self._limits.get(key)
            if current is None:
                raise NotFound(f"Quota for {key} not found")
            return self._store_limits(key, current.with_changes(changes))

    def remove_quota(self, key: QuotaKey, caller: AuthContext) -> Quota:
        require_admin(caller)
        with self._lock:
            if key not in self._limits:
                raise NotFound(f"Quota for {key} not found")
            removed = self._cache.quotas[key]
            if self._journal is not None:
                self._journal.append(RecordKind.LIMIT, limit_payload(key, None))
            del self._limits[key]
            self._publish_key(key)
            return removed

    def get_quota(self, key: QuotaKey, caller: AuthContext) -> Quota:
        require_authenticated(caller)
        quota = self._cache.quotas.get(key)
        if quota is None:
            raise NotFound(f"Quota for {key} not found")
        return quota

    def list_quotas(self, kind: ScopeKind, caller: AuthContext) -> list[Quota]:
        """Quotas of one kind, ordered by the decimal string of the id."""
        require_authenticated(caller)
        quotas = [q for k, q in self._cache.quotas.items() if k.kind is kind]
        return sorted(quotas, key=lambda q: str(q.key.id))

    # -- usage -----------------------------------------------------------

    def apply_scan(self, report: ScanReport) -> int:
        """Replace all usage with the report's totals in one swap."""
        with self._lock:
            current = self._cache
            if report.scan_seq <= current.scan_seq:
                raise StaleReport(
                    f"Scan {report.scan_seq} is not newer than generation {current.scan_seq}"
                )
            if self._journal is not None:
                usage_record = ScanUsageJson(
                    scan_seq=report.scan_seq, usage=ScanUsageJson.buckets(report)
                )
                mark = ScanMarkJson(
                    scan_seq=report.scan_seq,
                    started_at=report.started_at,
                    finished_at=report.finished_at,
                    entries_scanned=report.entries_scanned,
                )
                self._journal.append_batch(
                    [
                        (RecordKind.USAGE, usage_record.to_wire()),
                        (RecordKind.SCAN_MARK, mark.to_wire()),
                    ]
                )
            totals = report.totals_by_key()
            usage = {
                key: QuotaUsage.from_totals(by_policy, report.scan_seq)
                for key, by_policy in totals.items()
            }
            self._cache = self._build_generation(report.scan_seq, usage)
            return report.scan_seq

    def restore(self, state: StoreState) -> None:
        """Seed limits and usage from replayed state."""
        with self._lock:
            self._limits = dict(state.limits)
            self._cache = self._build_generation(state.scan_seq, dict(state.usage))

    # -- helpers ---------------------------------------------------------

    def _build_generation(
        self, scan_seq: int, usage: dict[QuotaKey, QuotaUsage]
    ) -> CacheGeneration:
        quotas: dict[QuotaKey, Quota] = {}
        for key in usage.keys() | self._limits.keys():
            limits = self._limits.get(key)
            quotas[key] = Quota(
                key=key,
                limits=limits or QuotaLimits(),
                usage=usage.get(key) or QuotaUsage(as_of_scan=scan_seq),
                has_limits=limits is not None,
            )
        return CacheGeneration(
            scan_seq=scan_seq,
            quotas=MappingProxyType(quotas),
            usage_keys=frozenset(usage),
        )

    def _store_limits(self, key: QuotaKey, limits: QuotaLimits) -> Quota:
        if self._journal is not None:
            self._journal.append(RecordKind.LIMIT, limit_payload(key, limits))
        self._limits[key] = limits
        self._publish_key(key)
        return self._cache.quotas[key]

    def _publish_key(self, key: QuotaKey) -> None:
        """Publish a generation that differs from the current one in ``key`` only."""
        current = self._cache
        quotas = dict(current.quotas)
        limits = self._limits.get(key)
        if limits is None and key not in current.usage_keys:
            quotas.pop(key, None)
        else:
            existing = quotas.get(key)
            quotas[key] = Quota(
                key=key,
                limits=limits or QuotaLimits(),
                usage=existing.usage if existing else QuotaUsage(as_of_scan=current.scan_seq),
                has_limits=limits is not None,
            )
        self._cache = replace(current, quotas=MappingProxyType(quotas))


def _validate(values: Iterable[int | None]) -> None:
    for value in values:
        if value is not None and value < 0:
            raise InvalidLimit(f"Quota limits must be non-negative, got {value}")
