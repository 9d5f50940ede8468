"""Append-only journal with snapshot compaction.

On-disk layout under the data directory::

    journal.log        framed records, oldest first
    snapshot.<seq>     full state as of journal sequence <seq>

Each frame is a 4-byte big-endian body length, a 4-byte CRC-32 of the body
and the body itself (canonical JSON of a ``StoreRecord``).
"""

import errno
import json
import os
import struct
import threading
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, BinaryIO

from app.core.exceptions import CorruptRecord, StoreFull
from app.core.logging import get_logger
from app.database.state import (
    RecordKind,
    StoreRecord,
    StoreState,
    apply_record,
    canonical_json,
    state_from_json,
    state_to_json,
)

logger = get_logger(__name__)

JOURNAL_NAME = "journal.log"
SNAPSHOT_PREFIX = "snapshot."
HEADER = struct.Struct(">II")


@dataclass
class ReplayResult:
    state: StoreState
    records: list[StoreRecord] = field(default_factory=list)
    truncated_bytes: int = 0
    error: str | None = None
    snapshot_seq: int = 0


def encode_frame(record: StoreRecord) -> bytes:
    body = record.encode()
    return HEADER.pack(len(body), zlib.crc32(body)) + body


def read_frames(data: bytes) -> tuple[list[StoreRecord], int, str | None]:
    """Decode frames until the data ends or a frame fails its checks.

    Returns the good records, the byte offset just past the last good frame
    and a description of the failure, if any.
    """
    records: list[StoreRecord] = []
    offset = 0
    while offset < len(data):
        try:
            record, size = _decode_frame(data, offset)
        except CorruptRecord as e:
            return records, offset, e.message
        if records and record.seq <= records[-1].seq:
            return records, offset, f"non-increasing seq {record.seq} at offset {offset}"
        records.append(record)
        offset += size
    return records, offset, None


def _decode_frame(data: bytes, offset: int) -> tuple[StoreRecord, int]:
    if offset + HEADER.size > len(data):
        raise CorruptRecord(f"torn header at offset {offset}")
    length, checksum = HEADER.unpack_from(data, offset)
    start = offset + HEADER.size
    body = data[start : start + length]
    if len(body) < length:
        raise CorruptRecord(f"torn record at offset {offset}")
    if zlib.crc32(body) != checksum:
        raise CorruptRecord(f"checksum mismatch at offset {offset}")
    try:
        return StoreRecord.decode(body), HEADER.size + length
    except (ValueError, KeyError, TypeError) as e:
        raise CorruptRecord(f"undecodable record at offset {offset}: {e}") from e


class Journal:
    """Single-writer durable store for limits, usage and the namespace."""

    def __init__(self, data_dir: str | Path, max_bytes: int = 1 << 30) -> None:
        self.data_dir = Path(data_dir)
        self.max_bytes = max_bytes
        self._lock = threading.Lock()
        self._fh: BinaryIO | None = None
        self._seq = 0
        self._size = 0

    @property
    def path(self) -> Path:
        return self.data_dir / JOURNAL_NAME

    @property
    def last_seq(self) -> int:
        return self._seq

    def replay(self) -> ReplayResult:
        """Rebuild state from the newest snapshot plus the journal.

        A torn or corrupt tail is cut off the file so later appends start
        on a clean record boundary. Leaves the journal open for appends.
        """
        with self._lock:
            self.data_dir.mkdir(parents=True, exist_ok=True)
            result = self.read_state()
            if result.truncated_bytes:
                logger.warning(
                    "⚠️  Journal %s: %s, discarding %d trailing bytes",
                    self.path,
                    result.error,
                    result.truncated_bytes,
                )
                with open(self.path, "r+b") as fh:
                    fh.truncate(self.path.stat().st_size - result.truncated_bytes)
                    fh.flush()
                    os.fsync(fh.fileno())
            self._close_handle()
            self._fh = open(self.path, "ab")
            self._size = self.path.stat().st_size
            self._seq = result.state.last_seq
            logger.info(
                "📖 Replayed %d journal records (snapshot seq %d, last seq %d)",
                len(result.records),
                result.snapshot_seq,
                self._seq,
            )
            return result

    def append(self, kind: RecordKind, payload: dict[str, Any]) -> int:
        """Durably append one record and return its sequence number."""
        return self.append_batch([(kind, payload)])

    def append_batch(self, items: list[tuple[RecordKind, dict[str, Any]]]) -> int:
        """Append records with no compaction in between; returns the last seq."""
        with self._lock:
            if self._fh is None:
                raise RuntimeError("journal is not open; call replay() first")
            records = [
                StoreRecord(seq=self._seq + i, kind=kind, payload=payload)
                for i, (kind, payload) in enumerate(items, 1)
            ]
            frames = b"".join(encode_frame(record) for record in records)
            if self._size + len(frames) > self.max_bytes:
                raise StoreFull(
                    f"Journal would exceed {self.max_bytes} bytes; compact the store"
                )
            try:
                self._fh.write(frames)
                self._fh.flush()
                os.fsync(self._fh.fileno())
            except OSError as e:
                if e.errno == errno.ENOSPC:
                    raise StoreFull(f"No space left for journal: {e}") from e
                raise
            self._seq = records[-1].seq
            self._size += len(frames)
            return self._seq

    def compact(self) -> Path:
        """Fold the journal into a new snapshot and empty the journal."""
        with self._lock:
            result = self.read_state()
            state = result.state
            target = self.data_dir / f"{SNAPSHOT_PREFIX}{state.last_seq}"
            tmp = target.with_suffix(".tmp")
            with open(tmp, "wb") as fh:
                fh.write(canonical_json({"seq": state.last_seq, "state": state_to_json(state)}))
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, target)

            self._close_handle()
            with open(self.path, "wb") as fh:
                os.fsync(fh.fileno())
            self._fh = open(self.path, "ab")
            self._size = 0
            self._seq = max(self._seq, state.last_seq)

            for old_seq, old in self._snapshots():
                if old_seq < state.last_seq:
                    old.unlink(missing_ok=True)
            logger.info("🗜️  Compacted journal into %s", target.name)
            return target

    def close(self) -> None:
        with self._lock:
            self._close_handle()

    def _close_handle(self) -> None:
        if self._fh is not None:
            self._fh.close()
            self._fh = None

    def _snapshots(self) -> list[tuple[int, Path]]:
        found = []
        for path in self.data_dir.glob(f"{SNAPSHOT_PREFIX}*"):
            suffix = path.name.removeprefix(SNAPSHOT_PREFIX)
            if suffix.isdigit():
                found.append((int(suffix), path))
        return sorted(found)

    def read_state(self) -> ReplayResult:
        """Fold the newest snapshot and the journal into a state; files are left untouched."""
        state = StoreState()
        snapshot_seq = 0
        snapshots = self._snapshots()
        if snapshots:
            # No fallback to an older snapshot: compaction has already emptied
            # the journal records that would bridge the gap.
            snapshot_seq, snapshot_path = snapshots[-1]
            try:
                raw = json.loads(snapshot_path.read_bytes())
                state = state_from_json(raw["state"], last_seq=int(raw["seq"]))
            except (ValueError, KeyError, TypeError) as e:
                raise CorruptRecord(f"unreadable snapshot {snapshot_path.name}: {e}") from e

        data = self.path.read_bytes() if self.path.exists() else b""
        records, good_bytes, error = read_frames(data)
        applied = []
        for record in records:
            # Left over when a crash hit between snapshot write and journal reset.
            if record.seq <= snapshot_seq:
                continue
            apply_record(state, record)
            applied.append(record)
        return ReplayResult(
            state=state,
            records=applied,
            truncated_bytes=len(data) - good_bytes,
            error=error,
            snapshot_seq=snapshot_seq,
        )
