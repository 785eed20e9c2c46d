"""Controlled-SWAP equivalence and entanglement tests for qubit, qudit,
and truncated-Fock optical states, with closed-form cross-checks, shot
sampling, and a reproducible experiment runner."""

from . import (  # noqa: F401
    closedform,
    experiments,
    hilbert,
    measures,
    optical,
    qstates,
    shots,
    swaptest,
)

__version__ = "0.1.0"
