"""Spectral solver for one-dimensional anharmonic oscillators.

Computes eigenvalues of -psi'' + V(x) psi = E psi for confining even
polynomial potentials by optimized basis expansion: a particle-in-a-box
basis with several closed-form optimal box lengths, a harmonic-oscillator
basis with variational frequency rules, and a sinc-collocation solver as
an independent cross-check.  All matrix work runs at a configurable bit
precision.
"""

from .eigen import JacobiNonConvergence, SpectrumReport, SymMatrix, jacobi_eigen, relative_errors
from .hobasis import HOBasisSpec, assemble_ho, box_convention_energy, op_frequency, pms_frequency
from .lengths import (
    LengthResult,
    ScanBracketError,
    length_for_rule,
    length_op,
    length_op1,
    length_op2,
    length_scan,
    length_schwartz,
    length_trace,
)
from .mp import BigReal, big_to_str, str_to_big, to_big, workprec
from .potentials import Asymptotics, Potential, asymptotics, evaluate, sextic_qes_ground
from .sinc import MeshSpec, collocation_solve, lsf_eval, sinc_eval
from .trigbasis import TrigHamiltonian, assemble_even, assemble_odd, d_coefficient, trace_closed_form

__version__ = "0.1.0"

__all__ = [
    "Asymptotics",
    "BigReal",
    "HOBasisSpec",
    "JacobiNonConvergence",
    "LengthResult",
    "MeshSpec",
    "Potential",
    "ScanBracketError",
    "SpectrumReport",
    "SymMatrix",
    "TrigHamiltonian",
    "assemble_even",
    "assemble_ho",
    "assemble_odd",
    "asymptotics",
    "big_to_str",
    "box_convention_energy",
    "collocation_solve",
    "d_coefficient",
    "evaluate",
    "jacobi_eigen",
    "length_for_rule",
    "length_op",
    "length_op1",
    "length_op2",
    "length_scan",
    "length_schwartz",
    "length_trace",
    "lsf_eval",
    "op_frequency",
    "pms_frequency",
    "relative_errors",
    "sextic_qes_ground",
    "sinc_eval",
    "str_to_big",
    "to_big",
    "trace_closed_form",
    "workprec",
]
