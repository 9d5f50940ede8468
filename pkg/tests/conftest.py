"""Shared fixtures: a fresh store per test and a client bound to it."""

from collections.abc import Iterator
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

from app.core.config import Settings
from app.main import create_app
from app.models import AuthContext, Role
from app.services import ServiceContainer

ADMIN_TOKEN = "admin-token"
USER_TOKEN = "user-token"

ADMIN = {"Authorization": f"Bearer {ADMIN_TOKEN}"}
USER = {"Authorization": f"Bearer {USER_TOKEN}"}
ANON: dict[str, str] = {}

ALICE = AuthContext(subject="alice", role=Role.USER, uid=1000, gid=2000)


@pytest.fixture
def data_dir(tmp_path: Path) -> Path:
    return tmp_path / "store"


@pytest.fixture
def settings(data_dir: Path) -> Settings:
    return Settings(
        DATA_DIR=str(data_dir),
        SCAN_ENABLED=False,
        TOKENS={ADMIN_TOKEN: "admin:0:0", USER_TOKEN: "user:1000:2000"},
    )


@pytest.fixture
def client(settings: Settings) -> Iterator[TestClient]:
    with TestClient(create_app(settings)) as test_client:
        yield test_client


@pytest.fixture
def services(client: TestClient) -> ServiceContainer:
    return client.app.state.services  # type: ignore[attr-defined]
