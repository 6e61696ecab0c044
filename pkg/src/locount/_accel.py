"""Switch between numba-compiled kernels and their plain numpy fallbacks.

Set ``LOCOUNT_DISABLE_NUMBA=1`` before import to force the fallback path.
"""
import logging
import os

logger = logging.getLogger(__name__)

_disabled = os.environ.get("LOCOUNT_DISABLE_NUMBA", "").strip().lower() in {"1", "true", "yes"}

try:
    if _disabled:
        raise ImportError("disabled by LOCOUNT_DISABLE_NUMBA")
    import numba

    NUMBA_ENABLED = True

    def njit(*args, **kwargs):
        kwargs.setdefault("cache", True)
        return numba.njit(*args, **kwargs)

except ImportError as exc:  # pragma: no cover - exercised via env flag in CI
    logger.debug("numba unavailable (%s); using numpy fallbacks", exc)
    NUMBA_ENABLED = False

    def njit(*args, **kwargs):
        if len(args) == 1 and callable(args[0]) and not kwargs:
            return args[0]
        return lambda func: func


def select(compiled, fallback):
    """Return ``compiled`` when numba is active, else ``fallback``."""
    return compiled if NUMBA_ENABLED else fallback
