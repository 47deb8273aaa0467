"""Elliptic Toda systems with a singular source at the origin.

Builds every solution ``U_i = -log <i|Phi^* C^* Lambda^2 C Phi|i> + 2 gamma^i log|z|``
from exact Puiseux data, evaluates it, and verifies it (PDE residual,
quantization, asymptotics, monodromy, W-invariants).
"""

from .liealg import GammaData, LieType, RootSystem, cartan_matrix, degrees, minus_kappa, positive_roots

__version__ = "0.1.0"

__all__ = [
    "GammaData",
    "LieType",
    "RootSystem",
    "cartan_matrix",
    "degrees",
    "minus_kappa",
    "positive_roots",
]
