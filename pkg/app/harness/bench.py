"""Create-latency measurement against an in-process namespace."""

import threading
import time
from dataclasses import dataclass

import numpy as np

from app.core.exceptions import ScanInProgress
from app.core.logging import get_logger
from app.models import SYSTEM, QuotaKey, QuotaLimits, ScopeKind
from app.services.namespace_service import Namespace
from app.services.quota_service import QuotaEngine
from app.services.scanner_service import QuotaScanner

logger = get_logger(__name__)

BENCH_UID = 1000
BENCH_GID = 2000
# Far above anything a bench run can reach, so every create is admitted.
BENCH_LIMIT = 1 << 60


@dataclass(frozen=True)
class LatencyDistribution:
    """Percentiles in seconds; ``None`` when nothing was measured."""

    count: int
    p50: float | None = None
    p95: float | None = None
    p99: float | None = None

    @classmethod
    def from_samples(cls, samples: list[float]) -> "LatencyDistribution":
        if not samples:
            return cls(count=0)
        p50, p95, p99 = np.percentile(np.asarray(samples), [50, 95, 99])
        return cls(count=len(samples), p50=float(p50), p95=float(p95), p99=float(p99))

    def describe(self) -> str:
        if self.count == 0:
            return "count=0"
        return (
            f"count={self.count} p50={self.p50 * 1e6:.1f}us "
            f"p95={self.p95 * 1e6:.1f}us p99={self.p99 * 1e6:.1f}us"
        )


class _ScanLoop(threading.Thread):
    """Runs scans back to back until stopped."""

    def __init__(self, scanner: QuotaScanner) -> None:
        super().__init__(name="bench-scan-loop", daemon=True)
        self._scanner = scanner
        self._halt = threading.Event()
        self.scans = 0

    def run(self) -> None:
        while not self._halt.is_set():
            try:
                self._scanner.run_scan_now()
                self.scans += 1
            except ScanInProgress:
                pass

    def stop(self) -> None:
        self._halt.set()
        self.join()


def measure_create_latency(
    n_files: int, with_scanner: bool = False, with_quota: bool = False
) -> LatencyDistribution:
    """Time ``n_files`` creates, optionally with quotas set and a scanner looping."""
    engine = QuotaEngine()
    namespace = Namespace(quota=engine)
    scanner = QuotaScanner(namespace, engine)
    if with_quota:
        limits = QuotaLimits(BENCH_LIMIT, BENCH_LIMIT, BENCH_LIMIT)
        engine.put_quota(QuotaKey(ScopeKind.USER, BENCH_UID), limits, SYSTEM)
        engine.put_quota(QuotaKey(ScopeKind.GROUP, BENCH_GID), limits, SYSTEM)
    namespace.make_directory("/bench", BENCH_UID, BENCH_GID, caller=SYSTEM)

    loop = _ScanLoop(scanner) if with_scanner else None
    if loop is not None:
        loop.start()
    samples: list[float] = []
    try:
        for i in range(n_files):
            start = time.perf_counter()
            namespace.create_entry(f"/bench/f{i}", BENCH_UID, BENCH_GID, caller=SYSTEM)
            samples.append(time.perf_counter() - start)
    finally:
        if loop is not None:
            loop.stop()

    distribution = LatencyDistribution.from_samples(samples)
    logger.info(
        "⏱️  create latency (scanner=%s, quota=%s): %s%s",
        with_scanner,
        with_quota,
        distribution.describe(),
        f", {loop.scans} concurrent scans" if loop is not None else "",
    )
    return distribution
