"""Exact verification toolkit for braided Z2-graded (Majorana) qubits."""

__version__ = "0.1.0"

from braidlab.braid import Generic, RootOfUnity, braid_matrix, generic, intertwiner, level
from braidlab.cyclotomic import Cyclotomic, ModeError
from braidlab.fock import ladder, spectrum
from braidlab.graded import GradedOperator, Parity, StateVector
from braidlab.kernels import BACKEND
from braidlab.qgroup import SingularLevelError

__all__ = [
    "BACKEND",
    "Cyclotomic",
    "Generic",
    "GradedOperator",
    "ModeError",
    "Parity",
    "RootOfUnity",
    "SingularLevelError",
    "StateVector",
    "braid_matrix",
    "generic",
    "intertwiner",
    "ladder",
    "level",
    "spectrum",
]
