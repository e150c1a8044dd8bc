"""Ambient spaces and the semi-Riemannian inner product.

All geometry in this package happens inside flat R^n carrying the inner
product

    <v, w> = (-1)^s v_1 w_1 + sum_{i >= 2} v_i w_i

with metric index s in {0, 1}.  Curved targets are quadrics of that flat
space: the unit sphere (<x, x> = 1), hyperbolic space (<x, x> = -1 with
x_1 > 0 on the index-1 space) and the de Sitter sphere (<x, x> = 1 at
index 1).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContractViolation


@dataclass(frozen=True)
class AmbientSpace:
    """Flat R^n with metric index s, optionally restricted to a quadric.

    quadric is the constant c with <x, x> = c on the target (None for the
    unrestricted flat space).  positive_first marks the upper-sheet
    constraint x_1 > 0 used by the hyperbolic quadric.
    """

    name: str
    dimension: int
    index: int = 0
    quadric: float | None = None
    positive_first: bool = False

    def __post_init__(self):
        if self.dimension not in (4, 5):
            raise ContractViolation(f"unsupported ambient dimension {self.dimension}")
        if self.index not in (0, 1):
            raise ContractViolation(f"metric index must be 0 or 1, got {self.index}")
        if self.index == 1 and self.dimension != 5:
            raise ContractViolation("index 1 is only used with dimension 5")
        if self.quadric not in (None, -1.0, 1.0, -1, 1):
            raise ContractViolation(f"quadric constant must be +-1 or None, got {self.quadric}")

    @property
    def signs(self) -> np.ndarray:
        s = np.ones(self.dimension)
        if self.index == 1:
            s[0] = -1.0
        return s

    @property
    def curvature(self) -> float:
        """Sectional curvature of the target as a space form (0 for flat)."""
        return 0.0 if self.quadric is None else float(self.quadric)

    def inner(self, v, w) -> float:
        return inner(v, w, self)

    def norm(self, v) -> float:
        """Euclidean norm of the coordinate vector (used for residual scales)."""
        return float(np.linalg.norm(np.asarray(v, dtype=float)))

    def on_quadric(self, x, tol: float) -> bool:
        if self.quadric is None:
            return True
        if abs(self.inner(x, x) - self.quadric) > tol:
            return False
        if self.positive_first and x[0] <= 0:
            return False
        return True


def inner(v, w, space: AmbientSpace) -> float:
    """Semi-Riemannian inner product of two coordinate vectors of space."""
    v = np.asarray(v, dtype=float)
    w = np.asarray(w, dtype=float)
    if v.shape != (space.dimension,) or w.shape != (space.dimension,):
        raise ContractViolation(
            f"inner expects vectors of length {space.dimension}, "
            f"got {v.shape} and {w.shape}"
        )
    total = float(v @ w)
    if space.index == 1:
        total -= 2.0 * v[0] * w[0]
    return total


def gram(vectors: np.ndarray, space: AmbientSpace) -> np.ndarray:
    """Gram matrix of row vectors under the space's inner product."""
    vectors = np.asarray(vectors, dtype=float)
    signed = vectors * space.signs
    return vectors @ signed.T


# Flat hypersurface ambient.
R4 = AmbientSpace("R4", 4)
# Target of the base surfaces for the flat construction.
S3 = AmbientSpace("S3", 4, quadric=1.0)
# Round sphere ambient for the spherical construction.
S4 = AmbientSpace("S4", 5, quadric=1.0)
# Hyperbolic ambient (upper sheet of the index-1 quadric).
H4 = AmbientSpace("H4", 5, index=1, quadric=-1.0, positive_first=True)
# De Sitter sphere, home of the datum surfaces for the hyperbolic construction.
DS4 = AmbientSpace("dS4", 5, index=1, quadric=1.0)


def hypersurface_ambient(curvature: float) -> AmbientSpace:
    """The ambient space form of curvature c in {-1, 0, 1}."""
    if curvature == 0.0:
        return R4
    if curvature == 1.0:
        return S4
    if curvature == -1.0:
        return H4
    raise ContractViolation(f"no ambient space form of curvature {curvature}")


def stereographic(x: np.ndarray, tol_pole: float) -> np.ndarray:
    """Stereographic chart of the unit 4-sphere from the pole (0,0,0,0,-1).

    Raises DomainError within tol_pole of the pole.
    """
    from .errors import DomainError

    x = np.asarray(x, dtype=float)
    if x.shape != (5,):
        raise ContractViolation("stereographic expects a 5-vector")
    denom = 1.0 + x[4]
    if denom < tol_pole:
        raise DomainError("point too close to the projection pole")
    return x[:4] / denom
