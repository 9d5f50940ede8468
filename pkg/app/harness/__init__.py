"""Workload harness: scenario files, a reference model and a latency bench."""

from pathlib import Path

from app.harness.bench import LatencyDistribution, measure_create_latency
from app.harness.model import ReferenceModel
from app.harness.runner import ScenarioReport, StepOutcome, run_scenario
from app.harness.scenario import (
    Scenario,
    ScenarioError,
    Step,
    generate_scenario,
    load_scenario,
    parse_scenario,
)

SCENARIO_DIR = Path(__file__).parent / "scenarios"

__all__ = [
    "SCENARIO_DIR",
    "LatencyDistribution",
    "ReferenceModel",
    "Scenario",
    "ScenarioError",
    "ScenarioReport",
    "Step",
    "StepOutcome",
    "generate_scenario",
    "load_scenario",
    "measure_create_latency",
    "parse_scenario",
    "run_scenario",
]
