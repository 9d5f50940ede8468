"""Durable storage for quota limits, usage and the namespace."""

from app.database.journal import Journal, ReplayResult, encode_frame, read_frames
from app.database.state import (
    RecordKind,
    StoreRecord,
    StoreState,
    apply_record,
    dump_state,
    limit_payload,
)

__all__ = [
    "Journal",
    "RecordKind",
    "ReplayResult",
    "StoreRecord",
    "StoreState",
    "apply_record",
    "dump_state",
    "encode_frame",
    "limit_payload",
    "read_frames",
]
