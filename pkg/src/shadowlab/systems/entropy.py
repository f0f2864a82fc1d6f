"""Topological entropy of one-step SFTs."""

from __future__ import annotations

import logging
import math

import numpy as np

from shadowlab.systems.symbolic import SymbolicSystem

logger = logging.getLogger(__name__)


def spectral_radius(matrix: np.ndarray, tol: float = 1e-10, max_iter: int = 200_000) -> float:
    """Perron root of a nonnegative matrix by power iteration.

    Iterates on A + I: it has spectral radius rho(A) + 1 and no other
    eigenvalue of that modulus, so periodic (imprimitive) matrices converge too.
    """
    a = np.asarray(matrix, dtype=float)
    n = a.shape[0]
    shifted = a + np.eye(n)
    x = np.full(n, 1.0 / math.sqrt(n))
    lam = 0.0
    for _ in range(max_iter):
        y = shifted @ x
        y_norm = float(np.linalg.norm(y))
        if y_norm == 0.0:
            return 0.0
        lam_new = y_norm / float(np.linalg.norm(x))
        x = y / y_norm
        if lam and abs(lam_new - lam) <= tol * lam_new:
            return max(lam_new - 1.0, 0.0)
        lam = lam_new
    logger.warning("power iteration did not converge in %d steps; using eigvals", max_iter)
    return float(np.max(np.abs(np.linalg.eigvals(a))))


def topological_entropy(system: SymbolicSystem) -> float:
    """Natural log of the spectral radius of the allowed matrix."""
    rho = spectral_radius(system.matrix)
    return math.log(rho) if rho > 1.0 else 0.0
