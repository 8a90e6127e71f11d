import os

from .errors import ResourceCapError

DEFAULT_CAP = 1 << 26

_cap = None


def get_cap() -> int:
    """Maximum word length, overridable through ``APERIODIC_CAP``."""
    if _cap is not None:
        return _cap
    env = os.environ.get("APERIODIC_CAP")
    return int(env) if env else DEFAULT_CAP


def set_cap(value):
    """Override the cap for this process; ``None`` restores the default."""
    global _cap
    _cap = None if value is None else int(value)


def check_length(length: int, what: str = "word") -> None:
    cap = get_cap()
    if length > cap:
        raise ResourceCapError(f"{what} of length {length} exceeds cap {cap}")
