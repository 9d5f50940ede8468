"""Table rendering for ``show`` and ``set`` output."""

from typing import Any

ID_WIDTH = 12
POLICY_WIDTH = 24
POLICIES = ("custodial", "replica", "output")
UNITS = ("KiB", "MiB", "GiB", "TiB")


def human_size(num_bytes: int) -> str:
    """Powers of 1024 with one decimal: 1048576 -> ``1.0MiB``."""
    if num_bytes < 1024:
        return f"{num_bytes}B"
    value = float(num_bytes)
    unit = UNITS[0]
    for unit in UNITS:
        value /= 1024
        if value < 1024:
            break
    return f"{value:.1f}{unit}"


def usage_cell(used: int, limit: int | None, human: bool) -> str:
    fmt = human_size if human else str
    return f"{fmt(used)}/{'-' if limit is None else fmt(limit)}"


def render_quotas(quotas: list[dict[str, Any]], human: bool = False) -> str:
    """One header line and one row per QuotaJson, in the order given."""
    lines = [_row("ID", *(p.upper() for p in POLICIES))]
    for quota in quotas:
        cells = [
            usage_cell(quota[f"{p}SpaceUsed"], quota[f"{p}Limit"], human) for p in POLICIES
        ]
        lines.append(_row(str(quota["id"]), *cells))
    return "\n".join(lines)


def _row(ident: str, custodial: str, replica: str, output: str) -> str:
    return (
        f"{ident:<{ID_WIDTH}}{custodial:<{POLICY_WIDTH}}{replica:<{POLICY_WIDTH}}{output}"
    ).rstrip()
