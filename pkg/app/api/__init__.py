"""API routes package."""

from fastapi import APIRouter

from app.api.routes import admin, namespace, quota

api_router = APIRouter()

api_router.include_router(quota.router, prefix="/quota", tags=["Quota"])
api_router.include_router(namespace.router, prefix="/ns", tags=["Namespace"])
api_router.include_router(admin.router, prefix="/admin", tags=["Admin"])
