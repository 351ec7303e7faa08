"""Exact verification of multisetting GHZ paradoxes for N qudits."""

from .exactnum import CycScalar, as_phase, format_phase, phase_scalar, scalar_mul
from .operators import MonomialOp, build_local_observable, compose, proportionality
from .states import SparseState, apply_composite, build_ghz, eigenvalue_of
from .paradox import (
    ParadoxInstance,
    generate,
    generate_npartite,
    generate_tripartite,
    invariance_gamma,
    verify_concurrency,
)
from .lhv import (
    CongruenceSystem,
    brute_force_solve,
    extract_system,
    lr_congruence,
    mermin_system,
    snf_solve,
)

__version__ = "0.1.0"

__all__ = [
    "CycScalar", "as_phase", "format_phase", "phase_scalar", "scalar_mul",
    "MonomialOp", "build_local_observable", "compose", "proportionality",
    "SparseState", "apply_composite", "build_ghz", "eigenvalue_of",
    "ParadoxInstance", "generate", "generate_npartite", "generate_tripartite",
    "invariance_gamma", "verify_concurrency",
    "CongruenceSystem", "brute_force_solve", "extract_system", "lr_congruence",
    "mermin_system", "snf_solve",
]
