"""Tests for quota endpoints."""

import pytest
from fastapi.testclient import TestClient

from app.services import ServiceContainer
from tests.conftest import ADMIN, ANON, USER

BODY = {"custodialLimit": 100, "replicaLimit": None}


def test_root_endpoint(client: TestClient) -> None:
    """Test root endpoint returns correct response."""
    response = client.get("/")
    assert response.status_code == 200
    data = response.json()
    assert data["status"] == "running"
    assert "version" in data


def test_health_check(client: TestClient) -> None:
    """Test health check endpoint."""
    response = client.get("/health")
    assert response.status_code == 200
    assert response.json() == {"status": "healthy"}


@pytest.mark.parametrize(
    ("method", "path", "body", "expected"),
    [
        ("GET", "/quota/user", None, {"anon": 401, "user": 200, "admin": 200}),
        ("GET", "/quota/group", None, {"anon": 401, "user": 200, "admin": 200}),
        ("GET", "/quota/user/1000", None, {"anon": 401, "user": 200, "admin": 200}),
        ("GET", "/quota/group/2000", None, {"anon": 401, "user": 200, "admin": 200}),
        ("POST", "/quota/user/1001", BODY, {"anon": 401, "user": 403, "admin": 201}),
        ("POST", "/quota/group/2001", BODY, {"anon": 401, "user": 403, "admin": 201}),
        ("PATCH", "/quota/user/1000", BODY, {"anon": 401, "user": 403, "admin": 200}),
        ("PATCH", "/quota/group/2000", BODY, {"anon": 401, "user": 403, "admin": 200}),
        ("DELETE", "/quota/user/1000", None, {"anon": 401, "user": 403, "admin": 204}),
        ("DELETE", "/quota/group/2000", None, {"anon": 401, "user": 403, "admin": 204}),
    ],
)
@pytest.mark.parametrize("role", ["anon", "user", "admin"])
def test_route_status_by_role(
    client: TestClient,
    method: str,
    path: str,
    body: dict | None,
    expected: dict[str, int],
    role: str,
) -> None:
    """Test every quota route against each role."""
    for kind, ident in (("user", 1000), ("group", 2000)):
        client.post(f"/api/v1/quota/{kind}/{ident}", json={"outputLimit": 5}, headers=ADMIN)
    headers = {"anon": ANON, "user": USER, "admin": ADMIN}[role]
    response = client.request(method, f"/api/v1{path}", json=body, headers=headers)
    assert response.status_code == expected[role]
    if response.status_code in (401, 403):
        assert "error" in response.json()


def test_create_and_get_quota(client: TestClient) -> None:
    """Test creating a quota and reading it back."""
    response = client.post(
        "/api/v1/quota/user/1000", json={"custodialLimit": 1048576}, headers=ADMIN
    )
    assert response.status_code == 201
    data = response.json()
    assert data["id"] == 1000
    assert data["type"] == "user"
    assert data["custodialLimit"] == 1048576
    assert data["replicaLimit"] is None
    assert data["custodialSpaceUsed"] == 0

    fetched = client.get("/api/v1/quota/user/1000", headers=USER)
    assert fetched.json() == data


def test_create_existing_quota_conflicts(client: TestClient) -> None:
    """Test creating a quota twice conflicts."""
    client.post("/api/v1/quota/group/2000", json={}, headers=ADMIN)
    response = client.post("/api/v1/quota/group/2000", json={}, headers=ADMIN)
    assert response.status_code == 409


def test_modify_only_sent_fields(client: TestClient) -> None:
    """Test PATCH leaves omitted policies untouched."""
    client.post(
        "/api/v1/quota/user/1000",
        json={"custodialLimit": 10, "replicaLimit": 20},
        headers=ADMIN,
    )
    response = client.patch(
        "/api/v1/quota/user/1000", json={"replicaLimit": None}, headers=ADMIN
    )
    assert response.status_code == 200
    assert response.json()["custodialLimit"] == 10
    assert response.json()["replicaLimit"] is None


def test_missing_quota(client: TestClient) -> None:
    """Test reading, modifying or removing an unknown quota."""
    for method in ("GET", "PATCH", "DELETE"):
        response = client.request(
            method, "/api/v1/quota/user/42", json={} if method == "PATCH" else None, headers=ADMIN
        )
        assert response.status_code == 404
        assert "not found" in response.json()["error"]


@pytest.mark.parametrize(
    "body",
    [{"custodialLimit": -1}, {"custodialLimit": "lots"}, {"bogusLimit": 1}],
)
def test_malformed_limits_are_rejected(client: TestClient, body: dict) -> None:
    """Test invalid limit bodies are rejected."""
    response = client.post("/api/v1/quota/user/1000", json=body, headers=ADMIN)
    assert response.status_code == 400
    assert response.json()["error"].startswith("Malformed request")


def test_unknown_kind_and_bad_id(client: TestClient) -> None:
    """Test unknown quota kinds and malformed ids."""
    assert client.get("/api/v1/quota/project", headers=USER).status_code == 400
    assert client.get("/api/v1/quota/user/-3", headers=USER).status_code == 400
    assert client.get("/api/v1/quota/user/abc", headers=USER).status_code == 400


def test_collection_sorted_by_decimal_string(client: TestClient) -> None:
    """Test quota collections are sorted by id as a string."""
    for ident in (2, 100, 30):
        client.post(f"/api/v1/quota/user/{ident}", json={}, headers=ADMIN)
    client.post("/api/v1/quota/group/7", json={}, headers=ADMIN)
    response = client.get("/api/v1/quota/user", headers=USER)
    assert [q["id"] for q in response.json()] == [100, 2, 30]


def test_reads_do_not_change_state(client: TestClient, services: ServiceContainer) -> None:
    """Test GET routes leave the stored state unchanged."""
    client.post("/api/v1/quota/user/1000", json={"replicaLimit": 1}, headers=ADMIN)
    client.put("/api/v1/ns/files/a", json={"uid": 1000, "gid": 2000, "size": 4}, headers=ADMIN)
    client.post("/api/v1/admin/scan", headers=ADMIN)
    digest = services.state_digest()
    for path in (
        "/quota/user",
        "/quota/group",
        "/quota/user/1000",
        "/quota/group/2000",
        "/ns/files/a",
        "/ns/dirs/",
        "/ns/check?uid=1000&gid=2000&policy=REPLICA",
    ):
        client.get(f"/api/v1{path}", headers=USER)
    assert services.state_digest() == digest


def test_usage_visible_after_scan(client: TestClient) -> None:
    """Test usage appears only after a scan."""
    client.post("/api/v1/quota/user/1000", json={"replicaLimit": 100}, headers=ADMIN)
    client.put("/api/v1/ns/files/a", json={"uid": 1000, "gid": 2000, "size": 40}, headers=ADMIN)
    assert client.get("/api/v1/quota/user/1000", headers=USER).json()["replicaSpaceUsed"] == 0

    client.post("/api/v1/admin/scan", headers=ADMIN)
    quota = client.get("/api/v1/quota/user/1000", headers=USER).json()
    assert quota["replicaSpaceUsed"] == 40
    # Group 2000 has usage but no limits; it is still reported.
    group = client.get("/api/v1/quota/group/2000", headers=USER).json()
    assert group["replicaSpaceUsed"] == 40
    assert group["replicaLimit"] is None


@pytest.mark.parametrize("method", ["POST", "PATCH"])
@pytest.mark.parametrize(
    ("headers", "expected"), [(ANON, 401), (USER, 403), (ADMIN, 400)]
)
def test_caller_checked_before_body(
    client: TestClient, method: str, headers: dict[str, str], expected: int
) -> None:
    """Non-admins are turned away before a malformed body is looked at."""
    client.post("/api/v1/quota/user/1000", json={}, headers=ADMIN)
    response = client.request(
        method, "/api/v1/quota/user/1000", json={"custodialLimit": -1}, headers=headers
    )
    assert response.status_code == expected
