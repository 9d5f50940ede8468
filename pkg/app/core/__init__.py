"""Core functionality package."""

