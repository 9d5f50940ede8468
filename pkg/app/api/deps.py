"""Request dependencies: the service container and the authenticated caller."""

from fastapi import Depends, Header, Request

from app.models import AuthContext
from app.services import ServiceContainer
from app.services.auth import require_admin


def get_services(request: Request) -> ServiceContainer:
    """Get the service container of the running app."""
    return request.app.state.services


def get_caller(
    authorization: str | None = Header(None),
    services: ServiceContainer = Depends(get_services),
) -> AuthContext:
    """Resolve the bearer token to a caller; no or unknown token means anonymous."""
    return services.authenticate(authorization)


def get_admin_caller(caller: AuthContext = Depends(get_caller)) -> AuthContext:
    """Reject non-admins before the request body is validated."""
    require_admin(caller)
    return caller
