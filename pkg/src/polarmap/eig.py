"""Small symmetric eigenproblems with an explicit symmetry contract.

Thin wrappers over numpy.linalg.eigh: the value added here is the symmetry
precondition, a fixed (descending) eigenvalue order and deterministic
eigenvector signs, which downstream frame fields rely on.
"""
from __future__ import annotations

import numpy as np

from .errors import ContractViolation

_SYM_REL = 1e-8


def _check_symmetric(m: np.ndarray, size: int) -> np.ndarray:
    m = np.asarray(m, dtype=float)
    if m.shape != (size, size):
        raise ContractViolation(f"expected a {size}x{size} matrix, got {m.shape}")
    scale = max(1.0, float(np.abs(m).max()))
    if float(np.abs(m - m.T).max()) > _SYM_REL * scale:
        raise ContractViolation("matrix is not symmetric to tolerance")
    return 0.5 * (m + m.T)


def _fix_signs(vectors: np.ndarray) -> np.ndarray:
    # Largest-magnitude entry of each eigenvector is made positive.
    out = vectors.copy()
    for j in range(out.shape[1]):
        k = int(np.argmax(np.abs(out[:, j])))
        if out[k, j] < 0:
            out[:, j] = -out[:, j]
    return out


def eigen2_sym(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvector columns of a symmetric 2x2."""
    m = _check_symmetric(m, 2)
    w, v = np.linalg.eigh(m)
    order = np.argsort(w)[::-1]
    return w[order], _fix_signs(v[:, order])


def eigen3_sym(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues (descending) and eigenvector columns of a symmetric 3x3."""
    m = _check_symmetric(m, 3)
    w, v = np.linalg.eigh(m)
    order = np.argsort(w)[::-1]
    return w[order], _fix_signs(v[:, order])
