"""HTTP front end for the lab: FastAPI app plus request/response schemas."""

from .app import app

__all__ = ["app"]
