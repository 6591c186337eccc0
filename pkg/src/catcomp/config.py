"""Size guards for the exhaustive searches.

Defaults can be overridden through ``CATCOMP_MAX_MORPHISMS`` /
``CATCOMP_MAX_SET`` or programmatically with :func:`limits`.
"""
import os
from contextlib import contextmanager

from .errors import SizeLimitError

DEFAULT_MAX_MORPHISMS = 64
DEFAULT_MAX_SET = 16


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise SizeLimitError(f"{name} must be an integer, got {raw!r}") from None
    if value < 0:
        raise SizeLimitError(f"{name} must be non-negative")
    return value


_limits = {
    "max_morphisms": _env_int("CATCOMP_MAX_MORPHISMS", DEFAULT_MAX_MORPHISMS),
    "max_set": _env_int("CATCOMP_MAX_SET", DEFAULT_MAX_SET),
}


def max_morphisms():
    return _limits["max_morphisms"]


def max_set():
    return _limits["max_set"]


def set_limits(max_morphisms=None, max_set=None):
    if max_morphisms is not None:
        _limits["max_morphisms"] = int(max_morphisms)
    if max_set is not None:
        _limits["max_set"] = int(max_set)


@contextmanager
def limits(max_morphisms=None, max_set=None):
    saved = dict(_limits)
    set_limits(max_morphisms, max_set)
    try:
        yield
    finally:
        _limits.update(saved)


def check_set_size(size, what):
    if size > _limits["max_set"]:
        raise SizeLimitError(
            f"{what} has {size} elements, above the max-set limit {_limits['max_set']}"
        )
