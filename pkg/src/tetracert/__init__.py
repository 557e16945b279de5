"""Exact verification of stabilizer, decomposition and generic-freeness claims.

All arithmetic happens in the cyclotomic field Q(zeta_24); see
:mod:`tetracert.field`.
"""

from .certificates import Certificate, Constants, run_all, run_certificate
from .field import CycNum
from .linalg import ExactMatrix, Subspace

__all__ = ["Certificate", "Constants", "CycNum", "ExactMatrix", "Subspace", "run_all", "run_certificate"]
__version__ = "0.1.0"
