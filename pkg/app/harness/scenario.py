"""Line-oriented scenario files.

One action per line, ``#`` starts a comment, an optional ``=> outcome``
suffix states the expected result::

    seed 7
    mkdir /data
    set-limit user 1000 custodial=10
    create /data/a uid=1000 gid=2000 policy=CUSTODIAL => ok
    commit /data/a 12
    scan
    assert-check uid=1000 gid=2000 policy=CUSTODIAL => deny
    remove /data/a
"""

import random
from dataclasses import dataclass, field, replace
from pathlib import Path

from app.models import RetentionPolicy, ScopeKind

ACTIONS = ("seed", "mkdir", "set-limit", "create", "commit", "remove", "scan", "assert-check")

OUTCOMES = {
    "create": ("ok", "quota-exceeded", "exists", "not-found"),
    "mkdir": ("ok", "exists", "not-found"),
    "commit": ("ok", "not-found"),
    "remove": ("ok", "not-found", "not-empty"),
    "assert-check": ("allow", "deny"),
}


class ScenarioError(ValueError):
    """A scenario line that cannot be parsed."""

    def __init__(self, line_no: int, message: str) -> None:
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


@dataclass(frozen=True)
class Step:
    line_no: int
    action: str
    args: tuple[str, ...] = ()
    options: dict[str, str] = field(default_factory=dict)
    expected: str | None = None

    def option_int(self, name: str) -> int:
        return int(self.options[name])

    @property
    def policy(self) -> RetentionPolicy | None:
        value = self.options.get("policy")
        return RetentionPolicy(value.upper()) if value else None

    def to_line(self) -> str:
        parts = [self.action, *self.args, *(f"{k}={v}" for k, v in self.options.items())]
        line = " ".join(parts)
        return f"{line} => {self.expected}" if self.expected else line


@dataclass
class Scenario:
    steps: list[Step] = field(default_factory=list)
    seed: int | None = None

    def to_text(self) -> str:
        return "".join(f"{step.to_line()}\n" for step in self.steps)

    def with_expectations(self, outcomes: list[str | None]) -> "Scenario":
        """Copy with ``expected`` filled where an outcome is given."""
        steps = [
            replace(step, expected=outcome) if outcome is not None else step
            for step, outcome in zip(self.steps, outcomes, strict=True)
        ]
        return Scenario(steps=steps, seed=self.seed)


def parse_scenario(text: str) -> Scenario:
    scenario = Scenario()
    for line_no, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        body, _, expected = line.partition("=>")
        tokens = body.split()
        if not tokens:
            raise ScenarioError(line_no, "missing action")
        action = tokens[0]
        if action not in ACTIONS:
            raise ScenarioError(line_no, f"unknown action {action!r}")
        args = tuple(t for t in tokens[1:] if "=" not in t)
        options = dict(t.split("=", 1) for t in tokens[1:] if "=" in t)
        step = Step(line_no, action, args, options, expected.strip() or None)
        _validate(step)
        if action == "seed":
            scenario.seed = int(args[0])
        scenario.steps.append(step)
    return scenario


def load_scenario(path: str | Path) -> Scenario:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def _validate(step: Step) -> None:
    def need(condition: bool, message: str) -> None:
        if not condition:
            raise ScenarioError(step.line_no, f"{step.action}: {message}")

    allowed = OUTCOMES.get(step.action, ("ok",))
    need(step.expected is None or step.expected in allowed, f"expected one of {allowed}")
    try:
        if step.action == "seed":
            need(len(step.args) == 1 and step.args[0].isdigit(), "usage: seed <n>")
        elif step.action in ("mkdir", "remove"):
            need(len(step.args) == 1, f"usage: {step.action} <path>")
        elif step.action == "commit":
            need(len(step.args) == 2 and step.args[1].isdigit(), "usage: commit <path> <bytes>")
        elif step.action == "create":
            need(len(step.args) == 1, "usage: create <path> uid=<n> gid=<n> [policy=<P>]")
            step.option_int("uid"), step.option_int("gid")
            step.policy
        elif step.action == "assert-check":
            step.option_int("uid"), step.option_int("gid")
            need(step.policy is not None, "policy= is required")
            need(step.expected is not None, "=> allow|deny is required")
        elif step.action == "set-limit":
            need(len(step.args) == 2 and step.args[1].isdigit(), "usage: set-limit <kind> <id> ...")
            ScopeKind(step.args[0])
            for policy, value in step.options.items():
                RetentionPolicy(policy.upper())
                need(value == "none" or value.isdigit(), f"bad limit {value!r}")
    except (KeyError, ValueError) as e:
        raise ScenarioError(step.line_no, f"{step.action}: {e}") from e


def generate_scenario(seed: int, steps: int = 60) -> Scenario:
    """A random but reproducible scenario over a few users and groups."""
    rng = random.Random(seed)
    uids, gids = (1000, 1001, 1002), (2000, 2001)
    lines = [f"seed {seed}", "mkdir /data"]
    files: list[str] = []
    counter = 0
    for _ in range(steps):
        roll = rng.random()
        if roll < 0.35 or not files:
            counter += 1
            path = f"/data/f{counter}"
            policy = rng.choice(list(RetentionPolicy)).value
            lines.append(
                f"create {path} uid={rng.choice(uids)} gid={rng.choice(gids)} policy={policy}"
            )
            files.append(path)
        elif roll < 0.55:
            lines.append(f"commit {rng.choice(files)} {rng.randint(0, 20)}")
        elif roll < 0.65:
            lines.append(f"remove {files.pop(rng.randrange(len(files)))}")
        elif roll < 0.78:
            lines.append("scan")
        elif roll < 0.9:
            kind = rng.choice(list(ScopeKind))
            ident = rng.choice(uids if kind is ScopeKind.USER else gids)
            policy = rng.choice(list(RetentionPolicy)).value.lower()
            value = "none" if rng.random() < 0.15 else str(rng.randint(0, 40))
            lines.append(f"set-limit {kind.value} {ident} {policy}={value}")
        else:
            policy = rng.choice(list(RetentionPolicy)).value
            lines.append(
                f"assert-check uid={rng.choice(uids)} gid={rng.choice(gids)} "
                f"policy={policy} => allow"
            )
    # "=> allow" is a placeholder; ReferenceModel.annotate sets the real outcome.
    return parse_scenario("\n".join(lines))
