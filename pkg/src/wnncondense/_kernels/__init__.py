"""Kernel selection: compiled core if built, numpy fallback otherwise.

The two implementations follow one operation-for-operation contract, so
their outputs (floats included) are bit-identical; tests assert this.
Set WNNCONDENSE_KERNELS=python or =compiled to force a choice.
"""

import os

from . import _numpy

_choice = os.environ.get("WNNCONDENSE_KERNELS", "").strip().lower()
if _choice not in ("", "python", "compiled"):
    raise RuntimeError(
        f"WNNCONDENSE_KERNELS must be 'python' or 'compiled', got {_choice!r}"
    )

if _choice == "python":
    _impl = _numpy
    COMPILED = False
else:
    try:
        from wnncondense import _ckernels as _impl

        COMPILED = True
    except ImportError:
        if _choice == "compiled":
            raise
        _impl = _numpy
        COMPILED = False

IMPL_NAME = "compiled" if COMPILED else "python"
LB_PRUNE = _numpy.LB_PRUNE

dist_matrix = _impl.dist_matrix
enemy_dists = _impl.enemy_dists
wnn_argmin = _impl.wnn_argmin
greedy_cover_dense = _impl.greedy_cover_dense
ball_counts = _impl.ball_counts
ball_members = _impl.ball_members
nn_scan = _impl.nn_scan
nn_candidates = _impl.nn_candidates
