"""Drive a scenario against a running service over REST and compare outcomes."""

from dataclasses import dataclass, field
from typing import Any

import httpx

from app.core.logging import get_logger
from app.harness.scenario import Scenario, Step

logger = get_logger(__name__)

API_PREFIX = "/api/v1"

# HTTP status -> scenario outcome for namespace mutations.
_MUTATION_OUTCOMES = {
    200: "ok",
    201: "ok",
    404: "not-found",
    409: "exists",
    507: "quota-exceeded",
}


@dataclass(frozen=True)
class StepOutcome:
    step: Step
    actual: str | None
    status_code: int | None = None

    @property
    def passed(self) -> bool:
        return self.step.expected is None or self.step.expected == self.actual

    def trace_line(self) -> str:
        mark = "ok  " if self.passed else "FAIL"
        detail = f" (expected {self.step.expected}, got {self.actual})" if not self.passed else ""
        return f"{mark} line {self.step.line_no}: {self.step.to_line()}{detail}"


@dataclass
class ScenarioReport:
    outcomes: list[StepOutcome] = field(default_factory=list)

    @property
    def failures(self) -> list[StepOutcome]:
        return [o for o in self.outcomes if not o.passed]

    @property
    def passed(self) -> bool:
        return not self.failures

    def trace(self) -> str:
        return "\n".join(o.trace_line() for o in self.outcomes)


class ScenarioRunner:
    """Maps each scenario action onto the quota and namespace routes."""

    def __init__(self, client: httpx.Client, token: str) -> None:
        self._client = client
        self._headers = {"Authorization": f"Bearer {token}"}

    def run(self, scenario: Scenario) -> ScenarioReport:
        report = ScenarioReport()
        for step in scenario.steps:
            outcome = getattr(self, "_" + step.action.replace("-", "_"))(step)
            report.outcomes.append(outcome)
            if not outcome.passed:
                logger.warning("❌ %s", outcome.trace_line())
        return report

    def _call(self, method: str, path: str, **kwargs: Any) -> httpx.Response:
        return self._client.request(
            method, f"{API_PREFIX}{path}", headers=self._headers, **kwargs
        )

    def _mutation(self, step: Step, response: httpx.Response) -> StepOutcome:
        actual = _MUTATION_OUTCOMES.get(response.status_code, f"http-{response.status_code}")
        if step.action == "remove" and response.status_code == 409:
            actual = "not-empty"
        return StepOutcome(step, actual, response.status_code)

    def _seed(self, step: Step) -> StepOutcome:
        return StepOutcome(step, None)

    def _scan(self, step: Step) -> StepOutcome:
        response = self._call("POST", "/admin/scan")
        response.raise_for_status()
        return StepOutcome(step, None, response.status_code)

    def _set_limit(self, step: Step) -> StepOutcome:
        kind, ident = step.args
        body = {
            f"{policy.lower()}Limit": None if value == "none" else int(value)
            for policy, value in step.options.items()
        }
        path = f"/quota/{kind}/{ident}"
        response = self._call("PATCH", path, json=body)
        if response.status_code == 404:
            response = self._call("POST", path, json=body)
        response.raise_for_status()
        return StepOutcome(step, None, response.status_code)

    def _mkdir(self, step: Step) -> StepOutcome:
        return self._mutation(step, self._call("PUT", f"/ns/dirs{step.args[0]}", json={}))

    def _create(self, step: Step) -> StepOutcome:
        body: dict[str, Any] = {"uid": step.option_int("uid"), "gid": step.option_int("gid")}
        if step.policy is not None:
            body["policy"] = step.policy.value
        return self._mutation(step, self._call("PUT", f"/ns/files{step.args[0]}", json=body))

    def _commit(self, step: Step) -> StepOutcome:
        path, size = step.args
        return self._mutation(
            step, self._call("PATCH", f"/ns/files{path}", json={"size": int(size)})
        )

    def _remove(self, step: Step) -> StepOutcome:
        return self._mutation(step, self._call("DELETE", f"/ns/files{step.args[0]}"))

    def _assert_check(self, step: Step) -> StepOutcome:
        assert step.policy is not None
        params = {
            "uid": step.option_int("uid"),
            "gid": step.option_int("gid"),
            "policy": step.policy.value,
        }
        response = self._call("GET", "/ns/check", params=params)
        response.raise_for_status()
        actual = "allow" if response.json()["allowed"] else "deny"
        return StepOutcome(step, actual, response.status_code)


def run_scenario(scenario: Scenario, client: httpx.Client, token: str) -> ScenarioReport:
    return ScenarioRunner(client, token).run(scenario)
