from contextlib import contextmanager
from dataclasses import dataclass, replace


@dataclass(frozen=True)
class Caps:
    """Size limits for the exhaustive routines.

    closure:      words per M-transformation closure
    monoid_class: words per Artin-monoid equivalence class
    group_order:  elements enumerated by a ball/group enumeration
    simplices:    simplices in a constructed simplicial complex
    radius:       largest ball radius or length bound accepted from the CLI
    """

    closure: int = 200_000
    monoid_class: int = 500_000
    group_order: int = 100_000
    simplices: int = 2_000_000
    radius: int = 64


DEFAULT_CAPS = Caps()
_active = DEFAULT_CAPS


def active_caps() -> Caps:
    return _active


def set_caps(caps: Caps | None = None, **changes) -> Caps:
    """Replace the process-wide caps; returns the previous value."""
    global _active
    old = _active
    _active = replace(caps or _active, **changes)
    return old


@contextmanager
def caps(**changes):
    old = set_caps(**changes)
    try:
        yield _active
    finally:
        set_caps(old)
