"""Journal records and the state they rebuild on replay."""

import json
from dataclasses import dataclass, field
from enum import Enum
from typing import Any

from app.models import (
    Entry,
    QuotaKey,
    QuotaLimits,
    QuotaUsage,
    RetentionPolicy,
    ScopeKind,
)
from app.schemas.namespace import EntryJson
from app.schemas.quota import QuotaLimitsIn
from app.schemas.scan import ScanMarkJson, ScanUsageJson


class RecordKind(str, Enum):
    LIMIT = "LIMIT"
    USAGE = "USAGE"
    NS_ENTRY = "NS_ENTRY"
    NS_REMOVE = "NS_REMOVE"
    SCAN_MARK = "SCAN_MARK"


@dataclass(frozen=True, slots=True)
class StoreRecord:
    seq: int
    kind: RecordKind
    payload: dict[str, Any]

    def encode(self) -> bytes:
        return canonical_json({"seq": self.seq, "kind": self.kind.value, "payload": self.payload})

    @classmethod
    def decode(cls, body: bytes) -> "StoreRecord":
        raw = json.loads(body)
        return cls(seq=int(raw["seq"]), kind=RecordKind(raw["kind"]), payload=raw["payload"])


class LimitRecord(QuotaLimitsIn):
    """LIMIT payload: the full limits of one key, or its removal."""

    type: ScopeKind
    id: int
    removed: bool = False


@dataclass
class StoreState:
    """Everything replay reconstructs."""

    entries: dict[int, Entry] = field(default_factory=dict)
    limits: dict[QuotaKey, QuotaLimits] = field(default_factory=dict)
    usage: dict[QuotaKey, QuotaUsage] = field(default_factory=dict)
    scan_seq: int = 0
    last_seq: int = 0
    # USAGE waits here until its SCAN_MARK arrives.
    pending_usage: ScanUsageJson | None = None


def canonical_json(value: Any) -> bytes:
    return json.dumps(value, sort_keys=True, separators=(",", ":"), ensure_ascii=False).encode()


def limit_payload(key: QuotaKey, limits: QuotaLimits | None) -> dict[str, Any]:
    if limits is None:
        record = LimitRecord(type=key.kind, id=key.id, removed=True)
    else:
        record = LimitRecord(
            type=key.kind,
            id=key.id,
            custodial_limit=limits.custodial_limit,
            replica_limit=limits.replica_limit,
            output_limit=limits.output_limit,
        )
    return record.to_wire()


def usage_from_totals(usage: ScanUsageJson) -> dict[QuotaKey, QuotaUsage]:
    grouped: dict[QuotaKey, dict[RetentionPolicy, int]] = {}
    for (key, policy), total in usage.usage_map().items():
        grouped.setdefault(key, {})[policy] = total
    return {
        key: QuotaUsage.from_totals(totals, usage.scan_seq) for key, totals in grouped.items()
    }


def apply_record(state: StoreState, record: StoreRecord) -> None:
    """Fold one record into ``state``."""
    payload = record.payload
    if record.kind is RecordKind.NS_ENTRY:
        entry = EntryJson.model_validate(payload).to_entry()
        state.entries[entry.id] = entry
    elif record.kind is RecordKind.NS_REMOVE:
        state.entries.pop(int(payload["id"]), None)
    elif record.kind is RecordKind.LIMIT:
        limit = LimitRecord.model_validate(payload)
        key = QuotaKey(limit.type, limit.id)
        if limit.removed:
            state.limits.pop(key, None)
        else:
            state.limits[key] = limit.to_limits()
    elif record.kind is RecordKind.USAGE:
        state.pending_usage = ScanUsageJson.model_validate(payload)
    elif record.kind is RecordKind.SCAN_MARK:
        mark = ScanMarkJson.model_validate(payload)
        pending = state.pending_usage
        if pending is not None and pending.scan_seq == mark.scan_seq:
            state.usage = usage_from_totals(pending)
            state.scan_seq = mark.scan_seq
        state.pending_usage = None
    state.last_seq = record.seq


def state_to_json(state: StoreState) -> dict[str, Any]:
    """Canonical dump of the domain state (journal bookkeeping excluded)."""
    return {
        "entries": [EntryJson.from_entry(e).to_wire() for _, e in sorted(state.entries.items())],
        "limits": [limit_payload(k, v) for k, v in sorted(state.limits.items())],
        "usage": [
            {"type": k.kind.value, "id": k.id, **_usage_fields(u)}
            for k, u in sorted(state.usage.items())
        ],
        "scanSeq": state.scan_seq,
    }


def state_from_json(raw: dict[str, Any], last_seq: int) -> StoreState:
    state = StoreState(scan_seq=int(raw["scanSeq"]), last_seq=last_seq)
    for item in raw["entries"]:
        entry = EntryJson.model_validate(item).to_entry()
        state.entries[entry.id] = entry
    for item in raw["limits"]:
        limit = LimitRecord.model_validate(item)
        state.limits[QuotaKey(limit.type, limit.id)] = limit.to_limits()
    for item in raw["usage"]:
        state.usage[QuotaKey(ScopeKind(item["type"]), int(item["id"]))] = QuotaUsage(
            replica_used=item["replicaSpaceUsed"],
            custodial_used=item["custodialSpaceUsed"],
            output_used=item["outputSpaceUsed"],
            as_of_scan=item["asOfScan"],
        )
    return state


def dump_state(state: StoreState) -> str:
    """Byte-stable text dump used for state-equality checks."""
    return canonical_json(state_to_json(state)).decode()


def _usage_fields(usage: QuotaUsage) -> dict[str, int]:
    return {
        "custodialSpaceUsed": usage.custodial_used,
        "replicaSpaceUsed": usage.replica_used,
        "outputSpaceUsed": usage.output_used,
        "asOfScan": usage.as_of_scan,
    }
