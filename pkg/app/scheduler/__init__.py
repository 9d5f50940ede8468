"""Scheduler package for automated tasks."""

from app.scheduler.jobs import shutdown_scheduler, start_scheduler, startup_scan

__all__ = ["start_scheduler", "shutdown_scheduler", "startup_scan"]
