"""Admin routes for manual operations."""

from typing import Any

from fastapi import APIRouter, Depends

from app.api.deps import get_admin_caller, get_services
from app.models import AuthContext
from app.schemas.scan import ScanReportJson
from app.services import ServiceContainer

router = APIRouter()


@router.post("/scan", response_model=ScanReportJson)
def manual_scan(
    caller: AuthContext = Depends(get_admin_caller),
    services: ServiceContainer = Depends(get_services),
) -> ScanReportJson:
    """Run one aggregation scan now and return its report."""
    return ScanReportJson.from_report(services.scanner.run_scan_now())


@router.post("/compact")
def manual_compact(
    caller: AuthContext = Depends(get_admin_caller),
    services: ServiceContainer = Depends(get_services),
) -> dict[str, Any]:
    """Fold the journal into a snapshot."""
    snapshot = services.journal.compact()
    return {
        "status": "success",
        "snapshot": snapshot.name,
        "message": f"Compacted journal into {snapshot.name}",
    }
