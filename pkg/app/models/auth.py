"""Caller identity."""

from dataclasses import dataclass
from enum import Enum


class Role(str, Enum):
    ANONYMOUS = "anonymous"
    USER = "user"
    ADMIN = "admin"


@dataclass(frozen=True, slots=True)
class AuthContext:
    """Who is calling. Anonymous callers carry no uid/gid."""

    subject: str
    role: Role
    uid: int | None = None
    gid: int | None = None

    @property
    def is_authenticated(self) -> bool:
        return self.role is not Role.ANONYMOUS

    @property
    def is_admin(self) -> bool:
        return self.role is Role.ADMIN


ANONYMOUS = AuthContext(subject="anonymous", role=Role.ANONYMOUS)

# In-process callers (startup replay, the harness) act with admin rights.
SYSTEM = AuthContext(subject="system", role=Role.ADMIN, uid=0, gid=0)
