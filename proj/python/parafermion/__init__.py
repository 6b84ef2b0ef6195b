"""Parafermion planar algebra verification engine.

Thin wrapper over the C++ core: parafermion Pauli/Clifford matrices, braid
matrices, tangle evaluation, and reflection-positivity checks.
"""

from _parafermion import (
    braid,
    clifford_enumerate,
    constants,
    eval_tangle,
    fourier_gaussian,
    jones_projection,
    loop_oracle,
    pauli,
    quaternions,
    rp_check,
    rp_equivalence,
    run_suite,
)

__all__ = [
    "braid",
    "clifford_enumerate",
    "constants",
    "eval_tangle",
    "fourier_gaussian",
    "jones_projection",
    "loop_oracle",
    "pauli",
    "quaternions",
    "rp_check",
    "rp_equivalence",
    "run_suite",
]
