"""Periodic aggregation of namespace usage into the quota cache."""

import threading
from collections import defaultdict
from collections.abc import Iterable
from datetime import datetime, timezone

from apscheduler.schedulers.background import BackgroundScheduler
from apscheduler.triggers.interval import IntervalTrigger

from app.core.exceptions import ScanInProgress
from app.core.logging import get_logger
from app.models import FileEntry, QuotaKey, ScanReport, ScanSchedule, ScopeKind, UsageBucket
from app.services.namespace_service import Namespace
from app.services.quota_service import QuotaEngine

logger = get_logger(__name__)

SCAN_JOB_ID = "quota_scan"


def aggregate(entries: Iterable[FileEntry]) -> tuple[int, dict[UsageBucket, int]]:
    """Sum sizes into (user, policy) and (group, policy) buckets."""
    usage: dict[UsageBucket, int] = defaultdict(int)
    count = 0
    for entry in entries:
        count += 1
        usage[(QuotaKey(ScopeKind.USER, entry.uid), entry.retention_policy)] += entry.size_bytes
        usage[(QuotaKey(ScopeKind.GROUP, entry.gid), entry.retention_policy)] += entry.size_bytes
    return count, dict(usage)


class QuotaScanner:
    """Runs full scans, one at a time, on demand or on an interval."""

    def __init__(self, namespace: Namespace, engine: QuotaEngine) -> None:
        self._namespace = namespace
        self._engine = engine
        self._scan_lock = threading.Lock()
        self._scheduler: BackgroundScheduler | None = None
        self.last_report: ScanReport | None = None

    @property
    def scheduled(self) -> bool:
        return self._scheduler is not None and self._scheduler.running

    def run_scan_now(self) -> ScanReport:
        """Aggregate every file entry and hand the totals to the quota engine."""
        if not self._scan_lock.acquire(blocking=False):
            raise ScanInProgress()
        try:
            started_at = datetime.now(timezone.utc)
            scan_seq = self._engine.scan_seq + 1
            count, usage = aggregate(self._namespace.iterate_entries())
            report = ScanReport(
                scan_seq=scan_seq,
                started_at=started_at,
                finished_at=datetime.now(timezone.utc),
                entries_scanned=count,
                usage=usage,
            )
            self._engine.apply_scan(report)
            self.last_report = report
            logger.info(
                "📊 Quota scan %d: %d entries, %d usage buckets",
                scan_seq,
                count,
                len(usage),
            )
            return report
        finally:
            self._scan_lock.release()

    def start_schedule(self, schedule: ScanSchedule) -> None:
        """Fire scans every ``schedule.interval`` seconds; overlapping fires are dropped."""
        self.stop_schedule()
        if not schedule.enabled:
            logger.info("⏸️  Periodic quota scans disabled")
            return
        scheduler = BackgroundScheduler(daemon=True)
        scheduler.add_job(
            self._scheduled_scan,
            trigger=IntervalTrigger(seconds=schedule.interval),
            id=SCAN_JOB_ID,
            name="Aggregate quota usage",
            max_instances=1,
            coalesce=True,
            replace_existing=True,
        )
        scheduler.start()
        self._scheduler = scheduler
        logger.info("📅 Scheduled: quota scan every %s seconds", schedule.interval)

    def stop_schedule(self) -> None:
        """Stop future fires and wait for an in-flight scan to finish."""
        scheduler, self._scheduler = self._scheduler, None
        if scheduler is not None and scheduler.running:
            scheduler.shutdown(wait=True)
            logger.info("🛑 Quota scan schedule stopped")

    def _scheduled_scan(self) -> None:
        try:
            self.run_scan_now()
        except ScanInProgress:
            logger.debug("Skipping scheduled scan: a manual scan is running")
        except Exception:
            logger.exception("❌ Scheduled quota scan failed")
