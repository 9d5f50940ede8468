"""API routes modules."""

