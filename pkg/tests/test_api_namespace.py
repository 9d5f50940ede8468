"""Tests for namespace and admin endpoints."""

from fastapi.testclient import TestClient

from app.services import ServiceContainer
from tests.conftest import ADMIN, ANON, USER


def test_create_file_defaults_to_caller_identity(client: TestClient) -> None:
    """Test omitted uid/gid are taken from the caller."""
    response = client.put("/api/v1/ns/files/a.dat", json={}, headers=USER)
    assert response.status_code == 201
    entry = response.json()
    assert entry["kind"] == "file"
    assert entry["uid"] == 1000
    assert entry["gid"] == 2000
    assert entry["sizeBytes"] == 0
    assert entry["retentionPolicy"] == "REPLICA"
    assert entry["accessLatency"] == "ONLINE"
    assert "defaultRetentionPolicy" not in entry


def test_create_file_requires_authentication(client: TestClient) -> None:
    """Test anonymous callers cannot create files."""
    response = client.put("/api/v1/ns/files/a.dat", json={}, headers=ANON)
    assert response.status_code == 401
    assert response.json() == {"error": "User must be authenticated."}


def test_directories_and_listing(client: TestClient) -> None:
    """Test making directories and listing their children."""
    response = client.put(
        "/api/v1/ns/dirs/tape",
        json={"defaultRetentionPolicy": "CUSTODIAL", "defaultAccessLatency": "NEARLINE"},
        headers=USER,
    )
    assert response.status_code == 201
    assert response.json()["kind"] == "directory"

    client.put("/api/v1/ns/files/tape/b", json={}, headers=USER)
    client.put("/api/v1/ns/files/tape/a", json={"policy": "OUTPUT"}, headers=USER)
    listing = client.get("/api/v1/ns/dirs/tape").json()
    assert [(e["name"], e["retentionPolicy"]) for e in listing] == [
        ("a", "OUTPUT"),
        ("b", "CUSTODIAL"),
    ]
    assert listing[1]["accessLatency"] == "NEARLINE"


def test_commit_size(client: TestClient) -> None:
    """Test PATCH commits the final size of a file."""
    client.put("/api/v1/ns/files/a", json={}, headers=USER)
    response = client.patch("/api/v1/ns/files/a", json={"size": 2048}, headers=USER)
    assert response.status_code == 200
    assert response.json()["sizeBytes"] == 2048
    assert client.get("/api/v1/ns/files/a").json()["sizeBytes"] == 2048
    assert client.patch("/api/v1/ns/files/a", json={"size": -1}, headers=USER).status_code == 400

    client.put("/api/v1/ns/dirs/d", json={}, headers=USER)
    assert client.patch("/api/v1/ns/files/d", json={"size": 1}, headers=USER).status_code == 400


def test_namespace_errors(client: TestClient) -> None:
    """Test namespace failures map to their HTTP statuses."""
    assert client.get("/api/v1/ns/files/missing").status_code == 404
    assert client.put("/api/v1/ns/files/x/y", json={}, headers=USER).status_code == 404
    client.put("/api/v1/ns/files/a", json={}, headers=USER)
    assert client.put("/api/v1/ns/files/a", json={}, headers=USER).status_code == 409
    client.put("/api/v1/ns/dirs/d", json={}, headers=USER)
    client.put("/api/v1/ns/files/d/f", json={}, headers=USER)
    assert client.delete("/api/v1/ns/files/d", headers=USER).status_code == 409
    assert client.delete("/api/v1/ns/files/d/f", headers=USER).status_code == 200
    assert client.delete("/api/v1/ns/files/d", headers=USER).status_code == 200
    bad_policy = client.put("/api/v1/ns/files/a", json={"policy": "TAPE"}, headers=USER)
    assert bad_policy.status_code == 400


def test_quota_exceeded_after_scan(client: TestClient) -> None:
    """Test creates are refused with 507 once a scan shows the limit reached."""
    client.post("/api/v1/quota/user/1000", json={"custodialLimit": 10}, headers=ADMIN)
    body = {"uid": 1000, "gid": 2000, "policy": "CUSTODIAL"}
    first = client.put("/api/v1/ns/files/a", json={**body, "size": 12}, headers=USER)
    assert first.status_code == 201
    # Not yet scanned: still admitted.
    assert client.put("/api/v1/ns/files/b", json=body, headers=USER).status_code == 201

    scan = client.post("/api/v1/admin/scan", headers=ADMIN)
    assert scan.status_code == 200

    response = client.put("/api/v1/ns/files/c", json=body, headers=USER)
    assert response.status_code == 507
    assert response.json() == {"error": "Quota exceeded"}
    assert client.get("/api/v1/ns/files/c").status_code == 404


def test_check_endpoint(client: TestClient) -> None:
    """Test the read-only quota check."""
    client.post("/api/v1/quota/group/2000", json={"outputLimit": 0}, headers=ADMIN)
    response = client.get(
        "/api/v1/ns/check", params={"uid": 1, "gid": 2000, "policy": "OUTPUT"}, headers=USER
    )
    assert response.status_code == 200
    assert response.json()["allowed"] is False
    assert response.json()["scope"] == "group:2000"

    allowed = client.get(
        "/api/v1/ns/check", params={"uid": 1, "gid": 2000, "policy": "REPLICA"}, headers=USER
    )
    assert allowed.json() == {"allowed": True, "reason": None, "scope": None}
    anonymous = client.get("/api/v1/ns/check", params={"uid": 1, "gid": 1, "policy": "REPLICA"})
    assert anonymous.status_code == 401


def test_manual_scan_report(client: TestClient, services: ServiceContainer) -> None:
    """Test a manual scan returns its report."""
    client.put("/api/v1/ns/files/a", json={"uid": 5, "gid": 6, "size": 3}, headers=ADMIN)
    client.put(
        "/api/v1/ns/files/b",
        json={"uid": 5, "gid": 7, "size": 4, "policy": "OUTPUT"},
        headers=ADMIN,
    )
    before = services.engine.scan_seq
    response = client.post("/api/v1/admin/scan", headers=ADMIN)
    assert response.status_code == 200
    report = response.json()
    assert report["scanSeq"] == before + 1
    assert report["entriesScanned"] == 2
    assert {"startedAt", "finishedAt"} <= report.keys()
    assert report["usage"] == [
        {"type": "group", "id": 6, "retentionPolicy": "REPLICA", "bytes": 3},
        {"type": "group", "id": 7, "retentionPolicy": "OUTPUT", "bytes": 4},
        {"type": "user", "id": 5, "retentionPolicy": "OUTPUT", "bytes": 4},
        {"type": "user", "id": 5, "retentionPolicy": "REPLICA", "bytes": 3},
    ]


def test_admin_routes_need_admin(client: TestClient) -> None:
    """Test scan and compact are admin-only."""
    for path in ("/api/v1/admin/scan", "/api/v1/admin/compact"):
        assert client.post(path, headers=ANON).status_code == 401
        assert client.post(path, headers=USER).status_code == 403


def test_compact_over_rest(client: TestClient, services: ServiceContainer) -> None:
    """Test compaction through the admin route."""
    client.put("/api/v1/ns/files/a", json={}, headers=USER)
    digest = services.state_digest()
    response = client.post("/api/v1/admin/compact", headers=ADMIN)
    assert response.status_code == 200
    assert response.json()["status"] == "success"
    assert response.json()["snapshot"].startswith("snapshot.")
    assert services.state_digest() == digest
