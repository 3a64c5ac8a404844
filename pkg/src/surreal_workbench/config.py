"""Evaluation settings shared by the whole library.

The active :class:`Config` lives in a context variable, so nested or
concurrent evaluations never see each other's settings.
"""

from __future__ import annotations

import decimal
from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, replace
from typing import Iterator

EXACT = "exact"
NUMERIC = "numeric"


@dataclass(frozen=True)
class Config:
    order: int = 8
    coeff_mode: str = EXACT
    precision: int = 50
    depth_limit: int = 16
    format: str = "text"

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError("order must be >= 1")
        if self.coeff_mode not in (EXACT, NUMERIC):
            raise ValueError(f"unknown coefficient mode {self.coeff_mode!r}")
        if self.precision < 10:
            raise ValueError("precision must be >= 10")
        if self.depth_limit < 1:
            raise ValueError("depth_limit must be >= 1")
        if self.format not in ("text", "json"):
            raise ValueError(f"unknown format {self.format!r}")

    @property
    def numeric(self) -> bool:
        return self.coeff_mode == NUMERIC


_current: ContextVar[Config] = ContextVar("surreal_config", default=Config())


def current() -> Config:
    return _current.get()


@contextmanager
def using(cfg: Config | None = None, **overrides) -> Iterator[Config]:
    """Activate ``cfg`` (or the current config with ``overrides``) for a block."""
    base = cfg if cfg is not None else current()
    if overrides:
        base = replace(base, **overrides)
    token = _current.set(base)
    try:
        with decimal.localcontext() as ctx:
            ctx.prec = base.precision
            yield base
    finally:
        _current.reset(token)
