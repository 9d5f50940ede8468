"""Quota routes: user and group limits and usage."""

from fastapi import APIRouter, Depends, Path, Response, status

from app.api.deps import get_admin_caller, get_caller, get_services
from app.models import AuthContext, QuotaKey, ScopeKind
from app.schemas.quota import QuotaJson, QuotaLimitsIn
from app.services import ServiceContainer

router = APIRouter()

QuotaId = Path(..., ge=0, description="UID or GID")


@router.get("/{kind}", response_model=list[QuotaJson])
def list_quotas(
    kind: ScopeKind,
    caller: AuthContext = Depends(get_caller),
    services: ServiceContainer = Depends(get_services),
) -> list[QuotaJson]:
    """Get information about all quotas of a kind. Results sorted lexicographically by id."""
    return [QuotaJson.from_quota(q) for q in services.engine.list_quotas(kind, caller)]


@router.get("/{kind}/{quota_id}", response_model=QuotaJson)
def get_quota(
    kind: ScopeKind,
    quota_id: int = QuotaId,
    caller: AuthContext = Depends(get_caller),
    services: ServiceContainer = Depends(get_services),
) -> QuotaJson:
    """Get information about quota for given user or group. User must be authenticated."""
    return QuotaJson.from_quota(services.engine.get_quota(QuotaKey(kind, quota_id), caller))


@router.post("/{kind}/{quota_id}", response_model=QuotaJson, status_code=status.HTTP_201_CREATED)
def create_quota(
    kind: ScopeKind,
    limits: QuotaLimitsIn,
    quota_id: int = QuotaId,
    caller: AuthContext = Depends(get_admin_caller),
    services: ServiceContainer = Depends(get_services),
) -> QuotaJson:
    """Add a new quota for the given user or group. Requires admin privileges."""
    quota = services.engine.put_quota(QuotaKey(kind, quota_id), limits.to_limits(), caller)
    return QuotaJson.from_quota(quota)


@router.patch("/{kind}/{quota_id}", response_model=QuotaJson)
def modify_quota(
    kind: ScopeKind,
    limits: QuotaLimitsIn,
    quota_id: int = QuotaId,
    caller: AuthContext = Depends(get_admin_caller),
    services: ServiceContainer = Depends(get_services),
) -> QuotaJson:
    """Modify the existing quota for the given user or group. Requires admin privileges."""
    quota = services.engine.modify_quota(QuotaKey(kind, quota_id), limits.to_changes(), caller)
    return QuotaJson.from_quota(quota)


@router.delete("/{kind}/{quota_id}", status_code=status.HTTP_204_NO_CONTENT)
def remove_quota(
    kind: ScopeKind,
    quota_id: int = QuotaId,
    caller: AuthContext = Depends(get_admin_caller),
    services: ServiceContainer = Depends(get_services),
) -> Response:
    """Remove the existing quota for the given user or group. Requires admin privileges."""
    services.engine.remove_quota(QuotaKey(kind, quota_id), caller)
    return Response(status_code=status.HTTP_204_NO_CONTENT)
