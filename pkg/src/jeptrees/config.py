"""Enumeration caps. Override per call or via environment variables."""

import os
from dataclasses import dataclass


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


@dataclass(frozen=True)
class Caps:
    max_items: int = _env_int("JEPTREES_MAX_ITEMS", 10**6)
    max_walks: int = _env_int("JEPTREES_MAX_WALKS", 10**6)
    max_families: int = _env_int("JEPTREES_MAX_FAMILIES", 10**6)
    max_states: int = _env_int("JEPTREES_MAX_STATES", 10**6)


DEFAULT_CAPS = Caps()
