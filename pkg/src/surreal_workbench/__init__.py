"""Exact symbolic arithmetic on a finitely representable fragment of the surreal numbers."""

from .errors import SurrealError

__version__ = "0.1.0"

__all__ = ["SurrealError", "__version__"]
