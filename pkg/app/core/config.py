"""Application configuration settings."""

import os
import re
from functools import lru_cache
from pathlib import Path
from typing import Any

from pydantic import field_validator
from pydantic.fields import FieldInfo
from pydantic_settings import (
    BaseSettings,
    PydanticBaseSettingsSource,
    SettingsConfigDict,
)

from app.core.exceptions import ConfigError
from app.models.auth import AuthContext, Role

# Config file key -> Settings field.
CONFIG_FILE_KEYS = {
    "port": "PORT",
    "host": "HOST",
    "data-dir": "DATA_DIR",
    "scan.interval": "SCAN_INTERVAL",
    "scan.enabled": "SCAN_ENABLED",
    "journal.max-bytes": "JOURNAL_MAX_BYTES",
    "log-level": "LOG_LEVEL",
}

_DURATION = re.compile(r"^\s*([0-9]*\.?[0-9]+)\s*(ms|s|m)?\s*$")
_TOKEN = re.compile(r"^(user|admin):(\d+):(\d+)$")


def parse_duration(value: str | float | int) -> float:
    """Parse ``500ms`` / ``60s`` / ``2m`` / ``60`` into seconds."""
    if isinstance(value, (int, float)):
        return float(value)
    match = _DURATION.match(value)
    if not match:
        raise ValueError(f"invalid duration: {value!r}")
    number, unit = float(match.group(1)), match.group(2) or "s"
    return number * {"ms": 0.001, "s": 1.0, "m": 60.0}[unit]


def parse_token(token: str, entry: str) -> AuthContext:
    """Turn ``admin:0:0`` into the caller identity bound to ``token``."""
    match = _TOKEN.match(entry.strip())
    if not match:
        raise ConfigError(f"Malformed token entry for {token!r}: {entry!r}")
    role, uid, gid = match.groups()
    return AuthContext(subject=token, role=Role(role), uid=int(uid), gid=int(gid))


def load_config_file(path: str | Path) -> dict[str, Any]:
    """Read ``key=value`` lines into Settings field values."""
    values: dict[str, Any] = {}
    tokens: dict[str, str] = {}
    for line_no, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{line_no}: expected key=value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        if key.startswith("token."):
            tokens[key.removeprefix("token.")] = value
        elif key in CONFIG_FILE_KEYS:
            values[CONFIG_FILE_KEYS[key]] = value
    if tokens:
        values["TOKENS"] = tokens
    return values


class ConfigFileSource(PydanticBaseSettingsSource):
    """Settings source backed by the service's key=value config file."""

    def __init__(self, settings_cls: type[BaseSettings], path: str | None) -> None:
        super().__init__(settings_cls)
        self._values = load_config_file(path) if path else {}

    def get_field_value(self, field: FieldInfo, field_name: str) -> tuple[Any, str, bool]:
        return self._values.get(field_name), field_name, False

    def __call__(self) -> dict[str, Any]:
        return dict(self._values)


class Settings(BaseSettings):
    """Application settings loaded from kwargs, environment, .env and the config file."""

    model_config = SettingsConfigDict(
        case_sensitive=True,
        env_file=".env",
        extra="ignore",
    )

    # Application
    PROJECT_NAME: str = "Namespace Quota API"
    VERSION: str = "0.1.0"
    DESCRIPTION: str = "Namespace service with user and group quota enforcement"
    API_V1_PREFIX: str = "/api/v1"

    # Server
    HOST: str = "0.0.0.0"
    PORT: int = 3880
    DEBUG: bool = False
    LOG_LEVEL: str = "INFO"
    CONFIG_FILE: str | None = None

    # CORS
    ALLOWED_ORIGINS: str = "http://localhost:3000,http://localhost:3880"

    # Persistence
    DATA_DIR: str = "./data"
    JOURNAL_MAX_BYTES: int = 1 << 30

    # Quota aggregation scans
    SCAN_INTERVAL: float = 60.0
    SCAN_ENABLED: bool = True

    # Bearer token -> "role:uid:gid"
    TOKENS: dict[str, str] = {}

    @classmethod
    def settings_customise_sources(
        cls,
        settings_cls: type[BaseSettings],
        init_settings: PydanticBaseSettingsSource,
        env_settings: PydanticBaseSettingsSource,
        dotenv_settings: PydanticBaseSettingsSource,
        file_secret_settings: PydanticBaseSettingsSource,
    ) -> tuple[PydanticBaseSettingsSource, ...]:
        init_kwargs = getattr(init_settings, "init_kwargs", {})
        path = init_kwargs.get("CONFIG_FILE") or os.environ.get("CONFIG_FILE")
        return (
            init_settings,
            env_settings,
            dotenv_settings,
            ConfigFileSource(settings_cls, path),
            file_secret_settings,
        )

    @field_validator("SCAN_INTERVAL", mode="before")
    @classmethod
    def _parse_interval(cls, value: Any) -> float:
        seconds = parse_duration(value)
        if seconds <= 0:
            raise ValueError("scan.interval must be positive")
        return seconds

    @field_validator("TOKENS")
    @classmethod
    def _check_tokens(cls, value: dict[str, str]) -> dict[str, str]:
        for token, entry in value.items():
            if not _TOKEN.match(entry.strip()):
                raise ValueError(f"malformed token entry for {token!r}: {entry!r}")
        return value

    @property
    def allowed_origins_list(self) -> list[str]:
        """Get ALLOWED_ORIGINS as a list."""
        return [origin.strip() for origin in self.ALLOWED_ORIGINS.split(",") if origin.strip()]

    @property
    def token_table(self) -> dict[str, AuthContext]:
        """Bearer token -> caller identity."""
        return {token: parse_token(token, entry) for token, entry in self.TOKENS.items()}


@lru_cache
def get_settings() -> Settings:
    """Get cached settings instance."""
    return Settings()


settings = get_settings()
