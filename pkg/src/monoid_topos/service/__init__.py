"""HTTP service wrapping the library (FastAPI)."""

from .app import app

__all__ = ["app"]
