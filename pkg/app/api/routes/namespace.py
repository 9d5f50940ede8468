"""Namespace routes used to drive the quota service end to end."""

from typing import Any

from fastapi import APIRouter, Depends, Query, status

from app.api.deps import get_caller, get_services
from app.models import AuthContext, RetentionPolicy
from app.schemas.namespace import CheckJson, DirectoryCreate, EntryJson, FileCreate, SizeCommit
from app.services import ServiceContainer
from app.services.auth import require_authenticated

router = APIRouter()

ENTRY_RESPONSE: dict[str, Any] = {"response_model": EntryJson, "response_model_exclude_none": True}


def _absolute(path: str) -> str:
    return "/" + path.strip("/") if path.strip("/") else "/"


@router.get("/check", response_model=CheckJson)
def check_quota(
    uid: int = Query(..., ge=0),
    gid: int = Query(..., ge=0),
    policy: RetentionPolicy = Query(...),
    caller: AuthContext = Depends(get_caller),
    services: ServiceContainer = Depends(get_services),
) -> CheckJson:
    """Would a create by uid/gid with this policy pass the quota check right now?"""
    require_authenticated(caller)
    return CheckJson.from_decision(services.engine.check(uid, gid, policy))


@router.put("/files/{path:path}", status_code=status.HTTP_201_CREATED, **ENTRY_RESPONSE)
def create_file(
    path: str,
    body: FileCreate,
    caller: AuthContext = Depends(get_caller),
    services: ServiceContainer = Depends(get_services),
) -> EntryJson:
    """Create a file entry, then commit its size when one is given."""
    entry = services.namespace.create_entry(
        _absolute(path),
        uid=body.uid if body.uid is not None else (caller.uid or 0),
        gid=body.gid if body.gid is not None else (caller.gid or 0),
        retention_policy=body.policy,
        access_latency=body.access_latency,
        caller=caller,
    )
    if body.size is not None:
        entry = services.namespace.commit_size(entry.id, body.size)
    return EntryJson.from_entry(entry)


@router.patch("/files/{path:path}", **ENTRY_RESPONSE)
def commit_size(
    path: str,
    body: SizeCommit,
    caller: AuthContext = Depends(get_caller),
    services: ServiceContainer = Depends(get_services),
) -> EntryJson:
    """Record the final size of a file."""
    require_authenticated(caller)
    entry = services.namespace.stat(_absolute(path))
    return EntryJson.from_entry(services.namespace.commit_size(entry.id, body.size))


@router.get("/files/{path:path}", **ENTRY_RESPONSE)
def stat_entry(
    path: str,
    services: ServiceContainer = Depends(get_services),
) -> EntryJson:
    """Metadata of a file or directory."""
    return EntryJson.from_entry(services.namespace.stat(_absolute(path)))


@router.delete("/files/{path:path}", **ENTRY_RESPONSE)
def remove_entry(
    path: str,
    caller: AuthContext = Depends(get_caller),
    services: ServiceContainer = Depends(get_services),
) -> EntryJson:
    """Remove a file or an empty directory; usage drops at the next scan."""
    return EntryJson.from_entry(services.namespace.remove_entry(_absolute(path), caller=caller))


@router.put("/dirs/{path:path}", status_code=status.HTTP_201_CREATED, **ENTRY_RESPONSE)
def make_directory(
    path: str,
    body: DirectoryCreate,
    caller: AuthContext = Depends(get_caller),
    services: ServiceContainer = Depends(get_services),
) -> EntryJson:
    entry = services.namespace.make_directory(
        _absolute(path),
        uid=body.uid if body.uid is not None else (caller.uid or 0),
        gid=body.gid if body.gid is not None else (caller.gid or 0),
        default_retention_policy=body.default_retention_policy,
        default_access_latency=body.default_access_latency,
        caller=caller,
    )
    return EntryJson.from_entry(entry)


@router.get("/dirs/{path:path}", response_model=list[EntryJson], response_model_exclude_none=True)
def list_directory(
    path: str,
    services: ServiceContainer = Depends(get_services),
) -> list[EntryJson]:
    """Children of a directory, sorted by name."""
    return [EntryJson.from_entry(e) for e in services.namespace.list_directory(_absolute(path))]
