"""Scheduled quota aggregation scans."""

from app.core.config import Settings
from app.core.exceptions import QuotaServiceError
from app.core.logging import get_logger
from app.models import ScanSchedule
from app.services import ServiceContainer

logger = get_logger(__name__)


def startup_scan(services: ServiceContainer) -> None:
    """Refresh usage right after replay; enforcement already runs on the persisted numbers."""
    logger.info("🔄 Running: startup quota scan...")
    try:
        report = services.scanner.run_scan_now()
        logger.info(
            "✅ Startup scan %d covered %d entries", report.scan_seq, report.entries_scanned
        )
    except QuotaServiceError as e:
        logger.error("❌ Error in startup scan: %s", e)


def start_scheduler(services: ServiceContainer, settings: Settings) -> None:
    """Start periodic quota scans as configured."""
    logger.info("🚀 Starting scheduler...")
    schedule = ScanSchedule(interval=settings.SCAN_INTERVAL, enabled=settings.SCAN_ENABLED)
    services.scanner.start_schedule(schedule)


def shutdown_scheduler(services: ServiceContainer) -> None:
    """Shutdown the scheduler, letting a running scan finish."""
    services.scanner.stop_schedule()
