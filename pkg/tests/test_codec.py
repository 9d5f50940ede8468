"""Tests for the wire and journal codecs: decoding what was encoded gives it back."""

from datetime import datetime, timezone

from hypothesis import given
from hypothesis import strategies as st

from app.database import (
    RecordKind,
    StoreRecord,
    StoreState,
    encode_frame,
    limit_payload,
    read_frames,
)
from app.database.state import LimitRecord, dump_state, state_from_json, state_to_json
from app.models import (
    AccessLatency,
    DirectoryEntry,
    FileEntry,
    QuotaKey,
    QuotaLimits,
    QuotaUsage,
    RetentionPolicy,
    ScanReport,
    ScopeKind,
)
from app.schemas.namespace import EntryJson
from app.schemas.scan import ScanUsageJson

ids = st.integers(min_value=0, max_value=2**31)
sizes = st.integers(min_value=0, max_value=2**62)
names = st.text(
    alphabet=st.characters(exclude_characters="/\x00", exclude_categories=["Cs"]),
    min_size=1,
    max_size=40,
)
keys = st.builds(QuotaKey, st.sampled_from(list(ScopeKind)), ids)
limit_values = st.one_of(st.none(), sizes)

file_entries = st.builds(
    FileEntry,
    id=st.integers(min_value=2, max_value=2**31),
    parent_id=st.integers(min_value=1, max_value=2**31),
    name=names,
    uid=ids,
    gid=ids,
    size_bytes=sizes,
    retention_policy=st.sampled_from(list(RetentionPolicy)),
    access_latency=st.sampled_from(list(AccessLatency)),
    created_at=st.integers(min_value=0, max_value=2**62),
)
directory_entries = st.builds(
    DirectoryEntry,
    id=st.integers(min_value=2, max_value=2**31),
    parent_id=st.integers(min_value=1, max_value=2**31),
    name=names,
    uid=ids,
    gid=ids,
    default_retention_policy=st.none() | st.sampled_from(list(RetentionPolicy)),
    default_access_latency=st.none() | st.sampled_from(list(AccessLatency)),
)
quota_limits = st.builds(QuotaLimits, limit_values, limit_values, limit_values)
quota_usages = st.builds(
    QuotaUsage, sizes, sizes, sizes, st.integers(min_value=0, max_value=2**31)
)
usage_maps = st.dictionaries(st.tuples(keys, st.sampled_from(list(RetentionPolicy))), sizes)


@given(entry=st.one_of(file_entries, directory_entries))
def test_entry_round_trip(entry: FileEntry | DirectoryEntry) -> None:
    """Entries survive the JSON form used by the API and the journal."""
    wire = EntryJson.from_entry(entry).to_wire()
    assert EntryJson.model_validate(wire).to_entry() == entry


@given(key=keys, limits=quota_limits)
def test_limit_record_round_trip(key: QuotaKey, limits: QuotaLimits) -> None:
    """Unlimited (None) policies stay unlimited after a LIMIT record round trip."""
    record = LimitRecord.model_validate(limit_payload(key, limits))
    assert (record.type, record.id, record.removed) == (key.kind, key.id, False)
    assert record.to_limits() == limits


@given(key=keys)
def test_limit_removal_round_trip(key: QuotaKey) -> None:
    """Test removal LIMIT records keep their key."""
    record = LimitRecord.model_validate(limit_payload(key, None))
    assert record.removed
    assert QuotaKey(record.type, record.id) == key


@given(usage=usage_maps, scan_seq=st.integers(min_value=1, max_value=2**31))
def test_scan_usage_round_trip(
    usage: dict[tuple[QuotaKey, RetentionPolicy], int], scan_seq: int
) -> None:
    """Scan buckets written to the journal read back as the same usage map."""
    now = datetime.now(timezone.utc)
    report = ScanReport(
        scan_seq=scan_seq, started_at=now, finished_at=now, entries_scanned=0, usage=usage
    )
    written = ScanUsageJson(scan_seq=scan_seq, usage=ScanUsageJson.buckets(report)).to_wire()
    read = ScanUsageJson.model_validate(written)
    assert read.scan_seq == scan_seq
    assert read.usage_map() == usage


@given(
    entries=st.lists(st.one_of(file_entries, directory_entries), max_size=20),
    limits=st.dictionaries(keys, quota_limits, max_size=10),
    usage=st.dictionaries(keys, quota_usages, max_size=10),
    scan_seq=st.integers(min_value=0, max_value=2**31),
)
def test_state_dump_round_trip(
    entries: list[FileEntry | DirectoryEntry],
    limits: dict[QuotaKey, QuotaLimits],
    usage: dict[QuotaKey, QuotaUsage],
    scan_seq: int,
) -> None:
    """A snapshot's state reloads unchanged."""
    state = StoreState(
        entries={e.id: e for e in entries}, limits=limits, usage=usage, scan_seq=scan_seq
    )
    loaded = state_from_json(state_to_json(state), last_seq=7)
    assert loaded.entries == state.entries
    assert loaded.limits == limits
    assert loaded.usage == usage
    assert loaded.scan_seq == scan_seq
    assert loaded.last_seq == 7
    assert dump_state(loaded) == dump_state(state)


@given(
    seq=st.integers(min_value=1, max_value=2**31),
    kind=st.sampled_from(list(RecordKind)),
    payload=st.dictionaries(names, st.one_of(st.none(), sizes, names), max_size=5),
)
def test_frame_round_trip(seq: int, kind: RecordKind, payload: dict) -> None:
    """Test a framed record reads back unchanged."""
    record = StoreRecord(seq=seq, kind=kind, payload=payload)
    records, good_bytes, error = read_frames(encode_frame(record))
    assert records == [record]
    assert error is None
    assert good_bytes == len(encode_frame(record))
