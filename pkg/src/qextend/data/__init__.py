"""Shipped example platforms and terminal series.

The numbers in these files are illustrative, not measured.
"""

from __future__ import annotations

from importlib import resources

from qextend.errors import ParseError

BUILTIN_PREFIX = "builtin:"

_SUFFIXES = (".platform", ".csv")


def list_builtins() -> list[str]:
    root = resources.files(__name__)
    return sorted(entry.name for entry in root.iterdir() if entry.name.endswith(_SUFFIXES))


def read_builtin(name: str) -> str:
    names = list_builtins()
    candidates = [name] + [name + suffix for suffix in _SUFFIXES]
    for candidate in candidates:
        if candidate in names:
            return resources.files(__name__).joinpath(candidate).read_text(encoding="utf-8")
    raise ParseError(f"no shipped file named {name!r}; available: {', '.join(names)}")
