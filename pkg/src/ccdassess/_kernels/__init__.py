"""Hot kernels with a compiled backend and a numpy fallback.

The compiled extension (``_core``) is used when it was built; otherwise the
numpy implementations in ``_fallback`` are selected at import.  Both produce
bit-identical output, so the choice only affects speed.
"""

import contextlib

from . import _fallback

try:
    from . import _core
except ImportError:  # extension not built
    _core = None

_BACKENDS = {"python": _fallback}
if _core is not None:
    _BACKENDS["compiled"] = _core

_active = _core if _core is not None else _fallback


def available_backends():
    return sorted(_BACKENDS)


def backend_name():
    return "compiled" if _active is _core and _core is not None else "python"


def set_backend(name):
    global _active
    try:
        _active = _BACKENDS[name]
    except KeyError:
        raise ValueError(
            f"unknown backend {name!r}; available: {available_backends()}") from None


@contextlib.contextmanager
def use_backend(name):
    previous = backend_name()
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def box_sum(arr, half_rows, half_cols, compensated=False):
    return _active.box_sum(arr, half_rows, half_cols, compensated)


def philox4x64(n, draw, key0, key1):
    return _active.philox4x64(n, draw, key0, key1)


def points_in_ring(px, py, xs, ys, tol):
    return _active.points_in_ring(px, py, xs, ys, tol)
