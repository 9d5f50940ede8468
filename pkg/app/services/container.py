"""Wiring of journal, namespace, quota engine and scanner."""

import hashlib
from dataclasses import dataclass

from app.core.config import Settings
from app.core.logging import get_logger
from app.database import Journal, ReplayResult, StoreState, dump_state
from app.models import AuthContext
from app.services.auth import resolve_bearer
from app.services.namespace_service import Namespace
from app.services.quota_service import QuotaEngine
from app.services.scanner_service import QuotaScanner

logger = get_logger(__name__)


@dataclass
class ServiceContainer:
    """Everything one running service instance owns."""

    settings: Settings
    journal: Journal
    engine: QuotaEngine
    namespace: Namespace
    scanner: QuotaScanner
    tokens: dict[str, AuthContext]
    replay: ReplayResult

    def authenticate(self, authorization: str | None) -> AuthContext:
        return resolve_bearer(authorization, self.tokens)

    def live_state(self) -> StoreState:
        """The in-memory state in the same shape replay produces."""
        generation = self.engine.snapshot()
        return StoreState(
            entries=self.namespace.entries(),
            limits=self.engine.limits(),
            usage={key: generation.quotas[key].usage for key in generation.usage_keys},
            scan_seq=generation.scan_seq,
            last_seq=self.journal.last_seq,
        )

    def state_digest(self) -> str:
        return hashlib.sha256(dump_state(self.live_state()).encode()).hexdigest()

    def close(self) -> None:
        self.scanner.stop_schedule()
        self.journal.close()


def build_services(settings: Settings) -> ServiceContainer:
    """Replay the store and assemble the services on top of it.

    Enforcement starts from the persisted usage; callers run the startup
    scan once the container is in place.
    """
    journal = Journal(settings.DATA_DIR, max_bytes=settings.JOURNAL_MAX_BYTES)
    replay = journal.replay()
    engine = QuotaEngine(journal=journal)
    engine.restore(replay.state)
    namespace = Namespace(quota=engine, journal=journal)
    namespace.restore(replay.state.entries.values())
    scanner = QuotaScanner(namespace, engine)
    logger.info(
        "✅ Restored %d entries, %d quotas, usage as of scan %d",
        len(replay.state.entries),
        len(replay.state.limits),
        replay.state.scan_seq,
    )
    return ServiceContainer(
        settings=settings,
        journal=journal,
        engine=engine,
        namespace=namespace,
        scanner=scanner,
        tokens=settings.token_table,
        replay=replay,
    )
