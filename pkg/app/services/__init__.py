"""Services package."""

from app.services.container import ServiceContainer, build_services
from app.services.namespace_service import Namespace
from app.services.quota_service import CacheGeneration, QuotaEngine
from app.services.scanner_service import QuotaScanner

__all__ = [
    "CacheGeneration",
    "Namespace",
    "QuotaEngine",
    "QuotaScanner",
    "ServiceContainer",
    "build_services",
]
