"""Brute-force reference for scenario outcomes.

Keeps the namespace as a flat path map and recomputes usage from scratch at
every ``scan`` step. Between scans the check reads the last computed usage,
so the model reproduces the service's enforcement lag exactly.
"""

from collections import defaultdict
from dataclasses import dataclass, field

from app.harness.scenario import Scenario, Step
from app.models import QuotaKey, RetentionPolicy, ScopeKind


@dataclass
class _File:
    uid: int
    gid: int
    policy: RetentionPolicy
    size: int = 0


@dataclass
class ReferenceModel:
    directories: set[str] = field(default_factory=lambda: {"/"})
    files: dict[str, _File] = field(default_factory=dict)
    limits: dict[QuotaKey, dict[RetentionPolicy, int | None]] = field(default_factory=dict)
    usage: dict[tuple[QuotaKey, RetentionPolicy], int] = field(default_factory=dict)

    def apply(self, step: Step) -> str | None:
        """Apply one step and return its outcome (``None`` for outcome-free steps)."""
        handler = getattr(self, "_" + step.action.replace("-", "_"))
        return handler(step)

    def annotate(self, scenario: Scenario) -> Scenario:
        """The scenario with every step's expected outcome filled in."""
        return scenario.with_expectations([self.apply(step) for step in scenario.steps])

    def allowed(self, uid: int, gid: int, policy: RetentionPolicy) -> bool:
        for key in (QuotaKey(ScopeKind.USER, uid), QuotaKey(ScopeKind.GROUP, gid)):
            limit = self.limits.get(key, {}).get(policy)
            if limit is not None and self.usage.get((key, policy), 0) >= limit:
                return False
        return True

    # -- actions ---------------------------------------------------------

    def _seed(self, step: Step) -> None:
        return None

    def _scan(self, step: Step) -> None:
        usage: dict[tuple[QuotaKey, RetentionPolicy], int] = defaultdict(int)
        for f in self.files.values():
            usage[(QuotaKey(ScopeKind.USER, f.uid), f.policy)] += f.size
            usage[(QuotaKey(ScopeKind.GROUP, f.gid), f.policy)] += f.size
        self.usage = dict(usage)

    def _set_limit(self, step: Step) -> None:
        key = QuotaKey(ScopeKind(step.args[0]), int(step.args[1]))
        current = self.limits.setdefault(key, {})
        for policy, value in step.options.items():
            current[RetentionPolicy(policy.upper())] = None if value == "none" else int(value)

    def _mkdir(self, step: Step) -> str:
        path = step.args[0]
        if path in self.directories or path in self.files:
            return "exists"
        if _parent(path) not in self.directories:
            return "not-found"
        self.directories.add(path)
        return "ok"

    def _create(self, step: Step) -> str:
        path = step.args[0]
        if path in self.directories or path in self.files:
            return "exists"
        if _parent(path) not in self.directories:
            return "not-found"
        uid, gid = step.option_int("uid"), step.option_int("gid")
        policy = step.policy or RetentionPolicy.REPLICA
        if not self.allowed(uid, gid, policy):
            return "quota-exceeded"
        self.files[path] = _File(uid, gid, policy)
        return "ok"

    def _commit(self, step: Step) -> str:
        f = self.files.get(step.args[0])
        if f is None:
            return "not-found"
        f.size = int(step.args[1])
        return "ok"

    def _remove(self, step: Step) -> str:
        path = step.args[0]
        if path in self.files:
            del self.files[path]
            return "ok"
        if path in self.directories and path != "/":
            if any(_parent(p) == path for p in (*self.directories, *self.files)):
                return "not-empty"
            self.directories.discard(path)
            return "ok"
        return "not-found"

    def _assert_check(self, step: Step) -> str:
        policy = step.policy
        assert policy is not None
        allowed = self.allowed(step.option_int("uid"), step.option_int("gid"), policy)
        return "allow" if allowed else "deny"


def _parent(path: str) -> str:
    head = path.rsplit("/", 1)[0]
    return head or "/"
