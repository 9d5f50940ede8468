"""Caller checks shared by the services."""

from app.core.exceptions import Forbidden, Unauthenticated
from app.models import ANONYMOUS, AuthContext


def require_authenticated(caller: AuthContext) -> None:
    if not caller.is_authenticated:
        raise Unauthenticated()


def require_admin(caller: AuthContext) -> None:
    """Anonymous callers get Unauthenticated, other non-admins Forbidden."""
    require_authenticated(caller)
    if not caller.is_admin:
        raise Forbidden()


def resolve_bearer(authorization: str | None, tokens: dict[str, AuthContext]) -> AuthContext:
    """Map an ``Authorization: Bearer <token>`` header to a caller."""
    if not authorization:
        return ANONYMOUS
    scheme, _, token = authorization.partition(" ")
    if scheme.lower() != "bearer" or not token:
        return ANONYMOUS
    return tokens.get(token.strip(), ANONYMOUS)
