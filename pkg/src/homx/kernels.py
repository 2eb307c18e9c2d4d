"""Backend selection for the hot kernels.

The compiled extension is used when importable; ``HOMX_PURE=1`` forces the
pure-Python twin. Compiled counting works in 64-bit words and defers to the
Python kernel when a count would overflow.
"""

import os

from . import _pykernels

python_backend = _pykernels
compiled_backend = None

if os.environ.get("HOMX_PURE") != "1":
    try:
        from . import _ckernels as compiled_backend
    except ImportError:
        compiled_backend = None

active = compiled_backend if compiled_backend is not None else python_backend
BACKEND = active.BACKEND


def count_homs(prev, terminal, nbr, q):
    if active is not python_backend:
        try:
            return active.count_homs(prev, terminal, nbr, q)
        except OverflowError:
            pass
    return python_backend.count_homs(prev, terminal, nbr, q)


def weighted_homs(prev, terminal, nbr, weights):
    return python_backend.weighted_homs(prev, terminal, nbr, weights)


def canonical_labeling(adj):
    if active is not python_backend and len(adj) <= 64:
        return active.canonical_labeling(adj)
    return python_backend.canonical_labeling(adj)
