"""Edge-list kernels used by the labelling checker and partition refinement.

Every kernel has a pure-numpy implementation and, when numba is importable,
an ``@njit`` twin with identical semantics.  The active backend is chosen
once at import time; set ``EPIMC_NUMBA=0`` to force the numpy path.

Edge lists are parallel ``int64`` arrays ``src``/``dst`` sorted by
``src * n + dst``; per-edge flags are ``bool`` arrays of the same length.
"""
from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised implicitly
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def _env_wants_numba() -> bool:
    flag = os.environ.get("EPIMC_NUMBA", "1").strip().lower()
    return flag not in ("0", "false", "off", "no")


# --- numpy backend ---------------------------------------------------------


def box_np(n, src, dst, alive, truth):
    """Worlds all of whose alive successors satisfy ``truth``."""
    out = np.ones(n, dtype=np.bool_)
    bad = alive & ~truth[dst]
    out[src[bad]] = False
    return out


def survive_np(src, dst, alive, truth, sharers_ok):
    """Edges that outlive a partial communication on a topic with extension ``truth``."""
    return alive & ((truth[src] == truth[dst]) | sharers_ok)


def gather_np(idx, alive):
    """``alive[idx]`` where ``idx >= 0``, ``False`` where the edge is missing (-1)."""
    out = np.zeros(idx.shape[0], dtype=np.bool_)
    hit = idx >= 0
    out[hit] = alive[idx[hit]]
    return out


def successor_blocks_np(n, k, src, dst, block):
    """``out[w, b]`` is True iff ``w`` has a successor in block ``b``."""
    out = np.zeros((n, k), dtype=np.bool_)
    out[src, block[dst]] = True
    return out


# --- numba backend ---------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=False)
    def box_nb(n, src, dst, alive, truth):
        out = np.ones(n, dtype=np.bool_)
        for e in range(src.shape[0]):
            if alive[e] and not truth[dst[e]]:
                out[src[e]] = False
        return out

    @njit(cache=False)
    def survive_nb(src, dst, alive, truth, sharers_ok):
        out = np.zeros(src.shape[0], dtype=np.bool_)
        for e in range(src.shape[0]):
            if alive[e]:
                out[e] = truth[src[e]] == truth[dst[e]] or sharers_ok[e]
        return out

    @njit(cache=False)
    def gather_nb(idx, alive):
        out = np.zeros(idx.shape[0], dtype=np.bool_)
        for e in range(idx.shape[0]):
            j = idx[e]
            if j >= 0:
                out[e] = alive[j]
        return out

    @njit(cache=False)
    def successor_blocks_nb(n, k, src, dst, block):
        out = np.zeros((n, k), dtype=np.bool_)
        for e in range(src.shape[0]):
            out[src[e], block[dst[e]]] = True
        return out


NUMPY_KERNELS = {
    "box": box_np,
    "survive": survive_np,
    "gather": gather_np,
    "successor_blocks": successor_blocks_np,
}

if HAVE_NUMBA:
    NUMBA_KERNELS = {
        "box": box_nb,
        "survive": survive_nb,
        "gather": gather_nb,
        "successor_blocks": successor_blocks_nb,
    }
else:  # pragma: no cover
    NUMBA_KERNELS = None

USE_NUMBA = HAVE_NUMBA and _env_wants_numba()
BACKEND = "numba" if USE_NUMBA else "numpy"
_ACTIVE = NUMBA_KERNELS if USE_NUMBA else NUMPY_KERNELS

box = _ACTIVE["box"]
survive = _ACTIVE["survive"]
gather = _ACTIVE["gather"]
successor_blocks = _ACTIVE["successor_blocks"]
