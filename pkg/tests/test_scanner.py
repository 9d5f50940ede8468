"""Tests for aggregation scans and their schedule."""

import random
import time
from collections import Counter

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from app.core.exceptions import InvalidInterval, ScanInProgress
from app.models import SYSTEM, QuotaKey, RetentionPolicy, ScanSchedule, ScopeKind
from app.services import Namespace, QuotaEngine, QuotaScanner
from app.services.scanner_service import aggregate

files = st.lists(
    st.tuples(
        st.integers(min_value=1, max_value=20),
        st.integers(min_value=1, max_value=5),
        st.sampled_from(list(RetentionPolicy)),
        st.integers(min_value=0, max_value=10**9),
    ),
    max_size=300,
)


def build(entries: list[tuple[int, int, RetentionPolicy, int]]) -> tuple[Namespace, QuotaEngine]:
    engine = QuotaEngine()
    namespace = Namespace(quota=engine)
    namespace.make_directory("/data", 0, 0, caller=SYSTEM)
    for i, (uid, gid, policy, size) in enumerate(entries):
        entry = namespace.create_entry(f"/data/f{i}", uid, gid, policy, caller=SYSTEM)
        namespace.commit_size(entry.id, size)
    return namespace, engine


@settings(max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow])
@given(entries=files)
def test_scan_matches_brute_force_sums(
    entries: list[tuple[int, int, RetentionPolicy, int]],
) -> None:
    """Scan totals equal a brute-force sum over the same files."""
    assert_matches_brute_force(entries)


def test_scan_of_five_thousand_files() -> None:
    """Brute-force agreement at full namespace size."""
    rng = random.Random(5000)
    policies = list(RetentionPolicy)
    entries = [
        (rng.randint(1, 50), rng.randint(1, 10), rng.choice(policies), rng.randint(0, 10**12))
        for _ in range(5000)
    ]
    assert_matches_brute_force(entries)


def assert_matches_brute_force(entries: list[tuple[int, int, RetentionPolicy, int]]) -> None:
    namespace, engine = build(entries)
    report = QuotaScanner(namespace, engine).run_scan_now()
    assert report.entries_scanned == len(entries)

    expected: Counter[tuple[QuotaKey, RetentionPolicy]] = Counter()
    for uid, gid, policy, size in entries:
        expected[(QuotaKey(ScopeKind.USER, uid), policy)] += size
        expected[(QuotaKey(ScopeKind.GROUP, gid), policy)] += size

    quotas = engine.snapshot().quotas
    for (key, policy), total in expected.items():
        assert quotas[key].usage.used_for(policy) == total
    assert {key for key, _ in expected} == set(quotas)


def test_aggregate_counts_entries() -> None:
    """Test aggregation totals and entry count."""
    namespace, _ = build([(1, 1, RetentionPolicy.REPLICA, 5), (1, 2, RetentionPolicy.REPLICA, 6)])
    count, usage = aggregate(namespace.iterate_entries())
    assert count == 2
    assert usage[(QuotaKey(ScopeKind.USER, 1), RetentionPolicy.REPLICA)] == 11
    assert usage[(QuotaKey(ScopeKind.GROUP, 2), RetentionPolicy.REPLICA)] == 6


def test_empty_namespace_scan() -> None:
    """Test scanning an empty namespace."""
    namespace, engine = build([])
    report = QuotaScanner(namespace, engine).run_scan_now()
    assert report.entries_scanned == 0
    assert report.usage == {}
    assert engine.scan_seq == 1


def test_scan_sequence_increases() -> None:
    """Test scan numbers increase by one."""
    namespace, engine = build([(1, 1, RetentionPolicy.OUTPUT, 1)])
    scanner = QuotaScanner(namespace, engine)
    assert [scanner.run_scan_now().scan_seq for _ in range(3)] == [1, 2, 3]
    assert scanner.last_report is not None
    assert scanner.last_report.scan_seq == 3
    assert namespace.traversals == 3


def test_concurrent_manual_scan_is_rejected() -> None:
    """Test a second scan during a scan is refused."""
    namespace, engine = build([])
    scanner = QuotaScanner(namespace, engine)
    scanner._scan_lock.acquire()
    try:
        with pytest.raises(ScanInProgress):
            scanner.run_scan_now()
    finally:
        scanner._scan_lock.release()


def test_schedule_rejects_non_positive_interval() -> None:
    """Test the schedule needs a positive interval."""
    with pytest.raises(InvalidInterval):
        ScanSchedule(interval=0)
    with pytest.raises(InvalidInterval):
        ScanSchedule(interval=-1.5)


def test_schedule_fires_periodically() -> None:
    """Test the schedule fires at its interval."""
    namespace, engine = build([(1, 1, RetentionPolicy.REPLICA, 3)])
    scanner = QuotaScanner(namespace, engine)
    scanner.start_schedule(ScanSchedule(interval=0.1))
    try:
        assert scanner.scheduled
        time.sleep(0.35)
    finally:
        scanner.stop_schedule()
    assert not scanner.scheduled
    assert 2 <= engine.scan_seq <= 4
    settled = engine.scan_seq
    time.sleep(0.25)
    assert engine.scan_seq == settled


def test_disabled_schedule_never_fires() -> None:
    """Test a disabled schedule runs no scans."""
    namespace, engine = build([])
    scanner = QuotaScanner(namespace, engine)
    scanner.start_schedule(ScanSchedule(interval=0.05, enabled=False))
    time.sleep(0.2)
    assert not scanner.scheduled
    assert engine.scan_seq == 0
