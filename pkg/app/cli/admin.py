"""``quota-admin``: quota administration against the REST API, plus service lifecycle.

Command forms::

    remove user quota <uid>            remove group quota <gid>
    set user quota [OPTIONS] <uid>     set group quota [OPTIONS] <gid>
    show user quota [-h] [-uid=<id>]   show group quota [-gid=<id>] [-h]

``set`` options are ``-custodial=``, ``-replica=`` and ``-output=`` taking a
byte count or ``none`` for unlimited.
"""

import re
from typing import Any

import click
import httpx

from app.cli.formatting import render_quotas
from app.core.config import Settings
from app.models import ScopeKind

API_PREFIX = "/api/v1"
UNLIMITED = "none"


class LimitType(click.ParamType):
    """A byte count or ``none``."""

    name = "bytes|none"

    def convert(self, value: Any, param: click.Parameter | None, ctx: click.Context | None) -> Any:
        if isinstance(value, int) or value == UNLIMITED:
            return value
        if isinstance(value, str) and re.fullmatch(r"\d+", value):
            return int(value)
        self.fail(f"{value!r} is not a byte count or 'none'", param, ctx)


class IdType(click.ParamType):
    """A decimal UID/GID given as a string."""

    name = "id"

    def convert(self, value: Any, param: click.Parameter | None, ctx: click.Context | None) -> Any:
        if isinstance(value, int):
            return value
        if isinstance(value, str) and re.fullmatch(r"\d+", value):
            return int(value)
        self.fail(f"{value!r} is not a decimal id", param, ctx)


LIMIT = LimitType()
ID = IdType()


class ApiClient:
    """Thin wrapper turning API failures into CLI errors."""

    def __init__(self, client: httpx.Client, token: str | None) -> None:
        self._client = client
        self._headers = {"Authorization": f"Bearer {token}"} if token else {}

    def request(
        self, method: str, path: str, json: Any = None, allow: tuple[int, ...] = ()
    ) -> httpx.Response:
        try:
            response = self._client.request(
                method, f"{API_PREFIX}{path}", json=json, headers=self._headers
            )
        except httpx.HTTPError as e:
            raise click.ClickException(f"Cannot reach quota server: {e}") from e
        if response.is_success or response.status_code in allow:
            return response
        raise click.ClickException(f"{response.status_code}: {_error_message(response)}")


def _error_message(response: httpx.Response) -> str:
    try:
        body = response.json()
    except ValueError:
        return response.text or response.reason_phrase
    return str(body.get("error") or body.get("detail") or body)


def _api(ctx: click.Context) -> ApiClient:
    obj = ctx.find_root().obj
    client = obj.get("client")
    if client is None:
        client = httpx.Client(base_url=obj["server"], timeout=30.0)
        obj["client"] = client
        ctx.call_on_close(client.close)
    return ApiClient(client, obj.get("token"))


@click.group(context_settings={"help_option_names": ["--help"]})
@click.option(
    "--server", envvar="QUOTA_SERVER_URL", default="http://localhost:3880", show_default=True
)
@click.option("--token", envvar="QUOTA_TOKEN", default=None, help="Bearer token.")
@click.pass_context
def cli(ctx: click.Context, server: str, token: str | None) -> None:
    """Administer user and group quotas."""
    ctx.ensure_object(dict)
    ctx.obj.setdefault("server", server)
    ctx.obj.setdefault("token", token)


@cli.group("remove")
def remove_group() -> None:
    """Remove a user or group quota."""


@cli.group("set")
def set_group() -> None:
    """Set a user or group quota."""


@cli.group("show")
def show_group() -> None:
    """Print user or group quotas."""


def _remove_command(kind: ScopeKind) -> click.Command:
    @click.command("quota", help=f"Remove {kind.value} quota.")
    @click.argument("quota_id", metavar=f"<{kind.value[0]}id>", type=ID)
    @click.pass_context
    def remove_quota(ctx: click.Context, quota_id: int) -> None:
        _api(ctx).request("DELETE", f"/quota/{kind.value}/{quota_id}")
        click.echo(f"Removed {kind.value} quota {quota_id}")

    return remove_quota


def _set_command(kind: ScopeKind) -> click.Command:
    @click.command("quota", help=f"Set {kind.value} quota.")
    @click.option("-custodial", "custodial", type=LIMIT, default=None, help="CUSTODIAL limit.")
    @click.option("-replica", "replica", type=LIMIT, default=None, help="REPLICA limit.")
    @click.option("-output", "output", type=LIMIT, default=None, help="OUTPUT limit.")
    @click.argument("quota_id", metavar=f"<{kind.value[0]}id>", type=ID)
    @click.pass_context
    def set_quota(
        ctx: click.Context,
        custodial: int | str | None,
        replica: int | str | None,
        output: int | str | None,
        quota_id: int,
    ) -> None:
        body = {
            f"{name}Limit": None if value == UNLIMITED else value
            for name, value in (("custodial", custodial), ("replica", replica), ("output", output))
            if value is not None
        }
        api = _api(ctx)
        path = f"/quota/{kind.value}/{quota_id}"
        response = api.request("PATCH", path, json=body, allow=(404,))
        if response.status_code == 404:
            response = api.request("POST", path, json=body)
        click.echo(render_quotas([response.json()]))

    return set_quota


def _show_command(kind: ScopeKind) -> click.Command:
    id_flag = "-uid" if kind is ScopeKind.USER else "-gid"

    @click.command("quota", help=f"Print {kind.value} quota.")
    @click.option("-h", "human", is_flag=True, help="Human-readable sizes.")
    @click.option(id_flag, "quota_id", type=ID, default=None, metavar="<string>")
    @click.pass_context
    def show_quota(ctx: click.Context, human: bool, quota_id: int | None) -> None:
        api = _api(ctx)
        if quota_id is None:
            quotas = api.request("GET", f"/quota/{kind.value}").json()
        else:
            quotas = [api.request("GET", f"/quota/{kind.value}/{quota_id}").json()]
        click.echo(render_quotas(quotas, human=human))

    return show_quota


for _kind in ScopeKind:
    for _parent, _factory in (
        (remove_group, _remove_command),
        (set_group, _set_command),
        (show_group, _show_command),
    ):
        _scope = click.Group(_kind.value, help=f"{_kind.value.capitalize()} quotas.")
        _scope.add_command(_factory(_kind))
        _parent.add_command(_scope)


# -- service lifecycle -------------------------------------------------------


@cli.command("serve")
@click.option("--config", "config_file", type=click.Path(dir_okay=False), default=None,
              help="key=value config file.")
@click.option("--data-dir", envvar="DATA_DIR", default=None, help="Store directory.")
@click.option("--host", default=None)
@click.option("--port", type=int, default=None)
def serve(
    config_file: str | None, data_dir: str | None, host: str | None, port: int | None
) -> None:
    """Run the quota API server."""
    import uvicorn

    from app.main import create_app

    overrides: dict[str, Any] = {"CONFIG_FILE": config_file}
    if data_dir:
        overrides["DATA_DIR"] = data_dir
    if host:
        overrides["HOST"] = host
    if port:
        overrides["PORT"] = port
    settings = Settings(**overrides)
    uvicorn.run(create_app(settings), host=settings.HOST, port=settings.PORT)


@cli.command("compact")
@click.option("--data-dir", envvar="DATA_DIR", required=True, help="Store directory.")
def compact(data_dir: str) -> None:
    """Compact an offline store into a snapshot."""
    from app.database import Journal

    journal = Journal(data_dir)
    journal.replay()
    try:
        click.echo(str(journal.compact()))
    finally:
        journal.close()


@cli.command("dump")
@click.option("--data-dir", envvar="DATA_DIR", required=True, help="Store directory.")
def dump(data_dir: str) -> None:
    """Print the canonical state dump of a store."""
    from app.database import Journal, dump_state

    result = Journal(data_dir).read_state()
    if result.error:
        click.echo(f"warning: {result.error}", err=True)
    click.echo(dump_state(result.state))


def main() -> None:
    cli(obj={})


if __name__ == "__main__":
    main()
