"""Main FastAPI application entry point."""

from collections.abc import AsyncIterator
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.middleware.cors import CORSMiddleware

from app.api import api_router
from app.api.errors import register_exception_handlers
from app.core.config import Settings, get_settings
from app.core.logging import get_logger, setup_logging
from app.scheduler import shutdown_scheduler, start_scheduler, startup_scan
from app.services import build_services

logger = get_logger(__name__)


def create_app(settings: Settings | None = None) -> FastAPI:
    """Build the API around one service instance rooted at ``settings.DATA_DIR``."""
    settings = settings or get_settings()

    @asynccontextmanager
    async def lifespan(app: FastAPI) -> AsyncIterator[None]:
        """Application lifespan manager."""
        setup_logging(settings.LOG_LEVEL)
        logger.info("🚀 Starting %s...", settings.PROJECT_NAME)

        logger.info("📊 Replaying store in %s...", settings.DATA_DIR)
        services = build_services(settings)
        app.state.services = services

        startup_scan(services)
        start_scheduler(services, settings)
        logger.info("✅ Application started successfully!")

        yield

        logger.info("🛑 Shutting down...")
        shutdown_scheduler(services)
        services.close()
        logger.info("👋 Application stopped")

    app = FastAPI(
        title=settings.PROJECT_NAME,
        version=settings.VERSION,
        description=settings.DESCRIPTION,
        openapi_url=f"{settings.API_V1_PREFIX}/openapi.json",
        docs_url=None,
        redoc_url=None,
        lifespan=lifespan,
    )
    app.state.settings = settings

    app.add_middleware(
        CORSMiddleware,
        allow_origins=settings.allowed_origins_list,
        allow_credentials=True,
        allow_methods=["*"],
        allow_headers=["*"],
    )
    register_exception_handlers(app)
    app.include_router(api_router, prefix=settings.API_V1_PREFIX)

    @app.get("/", tags=["Health"])
    async def root() -> dict[str, str]:
        """Root endpoint - Health check."""
        return {
            "message": f"Welcome to {settings.PROJECT_NAME}",
            "status": "running",
            "version": settings.VERSION,
            "description": settings.DESCRIPTION,
        }

    @app.get("/health", tags=["Health"])
    async def health_check() -> dict[str, str]:
        """Health check endpoint."""
        return {"status": "healthy"}

    return app


app = create_app()
