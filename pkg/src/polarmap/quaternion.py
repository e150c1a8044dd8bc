"""Quaternion algebra and the twistor projection to the 4-sphere.

Quaternions are stored as (1, i, j, k) component 4-tuples whose entries may
be floats or jet scalars; the helper functions below are written against
plain ring operations so the same code path produces values and jets.

A projective point [z1 : z2 : z3 : z4] of complex 3-space is read as the
quaternion pair (q1, q2) = (z1 + j z2, z3 + j z4).  Complex rescaling of the
z's is right multiplication of both q's, so the quaternionic line [q1 : q2]
(right scalar equivalence) is well defined and the fibration factors through
it.  The line maps to the unit 4-sphere by

    x = (2 q2 conj(q1), |q1|^2 - |q2|^2) / (|q1|^2 + |q2|^2)

which sends [1:0:0:0] to the pole (0,0,0,0,1) and is smooth with no chart
switching.
"""
from __future__ import annotations

import numpy as np

from .errors import ContractViolation, DomainError


class Quaternion:
    """Plain numeric quaternion with operator overloads (test convenience)."""

    __slots__ = ("q",)

    def __init__(self, w, x, y, z):
        self.q = np.array([w, x, y, z], dtype=float)

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        return Quaternion(*qmul(tuple(self.q), tuple(other.q)))

    def conj(self) -> "Quaternion":
        return Quaternion(self.q[0], -self.q[1], -self.q[2], -self.q[3])

    def norm(self) -> float:
        return float(np.linalg.norm(self.q))

    def __repr__(self):
        return f"Quaternion({self.q[0]}, {self.q[1]}, {self.q[2]}, {self.q[3]})"


def qmul(p, q):
    """Hamilton product of two (w, x, y, z) component tuples."""
    pw, px, py, pz = p
    qw, qx, qy, qz = q
    return (
        pw * qw - px * qx - py * qy - pz * qz,
        pw * qx + px * qw + py * qz - pz * qy,
        pw * qy - px * qz + py * qw + pz * qx,
        pw * qz + px * qy - py * qx + pz * qw,
    )


def qconj(q):
    return (q[0], -q[1], -q[2], -q[3])


def qnormsq(q):
    return q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]


def _pair_from_complex_components(z8):
    """(q1, q2) from the 8 real scalars (Re z1, Im z1, ..., Im z4).

    z1 + j z2 has components (Re z1, Im z1, Re z2, -Im z2): the minus sign
    comes from j i = -k.
    """
    a1, b1, a2, b2, a3, b3, a4, b4 = z8
    q1 = (a1, b1, a2, -b2)
    q2 = (a3, b3, a4, -b4)
    return q1, q2


def project_components(z8):
    """The five target components from 8 real scalars, in generic arithmetic."""
    q1, q2 = _pair_from_complex_components(z8)
    n1 = qnormsq(q1)
    n2 = qnormsq(q2)
    top = qmul(q2, qconj(q1))
    inv = 1.0 / (n1 + n2)
    return (
        2.0 * top[0] * inv,
        2.0 * top[1] * inv,
        2.0 * top[2] * inv,
        2.0 * top[3] * inv,
        (n1 - n2) * inv,
    )


def _split(p) -> list[float]:
    p = np.asarray(p, dtype=complex)
    if p.shape != (4,):
        raise ContractViolation("projective points have 4 complex components")
    if np.max(np.abs(p)) == 0.0:
        raise DomainError("the zero tuple is not a projective point")
    out: list[float] = []
    for c in p:
        out.extend((float(c.real), float(c.imag)))
    return out


def penrose_project(p) -> np.ndarray:
    """Image on the unit 4-sphere of the projective point p (4 complex)."""
    comps = project_components(_split(p))
    return np.array(comps, dtype=float)


def penrose_project_chart(p) -> np.ndarray:
    """Independent chart-based evaluation of the same projection.

    Uses the quotient u = q2 q1^{-1} (or its reciprocal chart) followed by
    inverse stereographic projection; serves as an oracle for the global
    formula in penrose_project.
    """
    z8 = _split(p)
    q1, q2 = _pair_from_complex_components(z8)
    n1, n2 = qnormsq(q1), qnormsq(q2)
    if n1 >= n2:
        u = qmul(q2, qconj(q1))
        u = tuple(c / n1 for c in u)
        nu = qnormsq(u)
        scale = 1.0 / (1.0 + nu)
        return np.array(
            [2 * u[0] * scale, 2 * u[1] * scale, 2 * u[2] * scale, 2 * u[3] * scale,
             (1.0 - nu) * scale],
            dtype=float,
        )
    v = qmul(q1, qconj(q2))
    v = tuple(c / n2 for c in v)
    nv = qnormsq(v)
    scale = 1.0 / (1.0 + nv)
    vbar = qconj(v)
    return np.array(
        [2 * vbar[0] * scale, 2 * vbar[1] * scale, 2 * vbar[2] * scale, 2 * vbar[3] * scale,
         (nv - 1.0) * scale],
        dtype=float,
    )


def contact_pairing(p, dp) -> complex:
    """Holomorphic contact form whose kernel is the horizontal distribution.

    theta(dp) = z1 dz2 - z2 dz1 + z3 dz4 - z4 dz3, evaluated on a tangent
    vector dp at p.  A holomorphic curve is horizontal for the fibration
    exactly when this vanishes along its derivative.
    """
    z1, z2, z3, z4 = p
    w1, w2, w3, w4 = dp
    return z1 * w2 - z2 * w1 + z3 * w4 - z4 * w3
