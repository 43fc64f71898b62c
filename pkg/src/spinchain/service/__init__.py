"""HTTP service wrapper around the solver package."""

from .app import app, create_app

__all__ = ["app", "create_app"]
