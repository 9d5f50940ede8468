"""``harness``: run scenarios against a fresh service and measure create latency."""

import sys
import tempfile
from collections.abc import Iterator
from contextlib import contextmanager

import click
from fastapi.testclient import TestClient

from app.core.config import Settings
from app.core.logging import setup_logging
from app.harness.bench import measure_create_latency
from app.harness.model import ReferenceModel
from app.harness.runner import ScenarioReport, run_scenario
from app.harness.scenario import Scenario, ScenarioError, generate_scenario, load_scenario

HARNESS_TOKEN = "harness"


@contextmanager
def fresh_service() -> Iterator[TestClient]:
    """A service on an empty store with periodic scans off and one admin token."""
    from app.main import create_app

    with tempfile.TemporaryDirectory(prefix="quota-harness-") as data_dir:
        settings = Settings(
            DATA_DIR=data_dir,
            SCAN_ENABLED=False,
            TOKENS={HARNESS_TOKEN: "admin:0:0"},
        )
        with TestClient(create_app(settings)) as client:
            yield client


def execute(scenario: Scenario) -> ScenarioReport:
    with fresh_service() as client:
        return run_scenario(scenario, client, HARNESS_TOKEN)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--log-level", default="WARNING", show_default=True)
def cli(log_level: str) -> None:
    """Scenario driver and create-latency bench for the quota service."""
    setup_logging(log_level)


@cli.command("run")
@click.argument("scenario_file", type=click.Path(exists=True, dir_okay=False))
@click.option("--quiet", is_flag=True, help="Print only failures.")
def run(scenario_file: str, quiet: bool) -> None:
    """Run SCENARIO_FILE step by step and report every assertion."""
    try:
        scenario = load_scenario(scenario_file)
    except ScenarioError as e:
        raise click.ClickException(str(e)) from e
    report = execute(scenario)
    lines = report.failures if quiet else report.outcomes
    for outcome in lines:
        click.echo(outcome.trace_line())
    click.echo(f"{len(report.outcomes)} steps, {len(report.failures)} failed")
    if not report.passed:
        sys.exit(1)


@cli.command("generate")
@click.option("--seed", type=int, required=True)
@click.option("--steps", type=int, default=60, show_default=True)
def generate(seed: int, steps: int) -> None:
    """Print a random scenario with outcomes from the reference model."""
    click.echo(ReferenceModel().annotate(generate_scenario(seed, steps)).to_text(), nl=False)


@cli.command("bench")
@click.option("--files", "n_files", type=click.IntRange(min=0), required=True)
@click.option("--scanner", is_flag=True, help="Loop scans concurrently.")
@click.option("--quota", is_flag=True, help="Configure quotas for the creating user and group.")
def bench(n_files: int, scanner: bool, quota: bool) -> None:
    """Create N files and print create-latency percentiles."""
    distribution = measure_create_latency(n_files, with_scanner=scanner, with_quota=quota)
    click.echo(distribution.describe())


def main() -> None:
    cli()


if __name__ == "__main__":
    main()
