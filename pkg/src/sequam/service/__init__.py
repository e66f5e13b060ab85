"""HTTP service exposing the measurement-bound computations.

Pydantic request/response models live in :mod:`sequam.service.schemas`;
the FastAPI application factory is :func:`sequam.service.app.create_app`.
"""

from .app import create_app

__all__ = ["create_app"]
