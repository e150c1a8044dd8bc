"""Closed-form minimal surfaces in R3 with exact 2-jets.

Each preset stores the holomorphic primitive triple Phi(z) together with its
first two derivatives in closed form; the surface is X = Re Phi, which is
automatically harmonic and conformal.  The presets are the classical charts:

* catenoid:  Phi = (cosh z, -i sinh z, z)
* helicoid:  Phi = (sinh z, -i cosh z, -i z)
* enneper:   Phi = (z - z^3/3, -i(z + z^3/3), z^2)
* plane:     Phi = (z, -i z, 0)
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import ContractViolation, SingularMetricError
from .jets import J1, Jet2Point, j2_from_holomorphic, real_imag
from .surface import cross3_j1

__all__ = ["WeierstrassData", "weierstrass_preset", "WEIERSTRASS_PRESETS"]

_Triple = tuple[
    tuple[complex, complex, complex],
    tuple[complex, complex, complex],
    tuple[complex, complex, complex],
]


@dataclass(frozen=True)
class WeierstrassData:
    """A minimal surface in R3 given by a holomorphic primitive triple.

    ``triple(z)`` returns ((Phi), (Phi'), (Phi'')) componentwise.
    """

    name: str
    triple: Callable[[complex], _Triple]

    def jet(self, z: complex) -> Jet2Point:
        """Real 2-jet of X = Re Phi at z."""
        z = complex(z)
        vals, d1, d2 = self.triple(z)
        value = np.empty(3)
        dx = np.empty((2, 3))
        dxx = np.empty((3, 3))
        for k in range(3):
            comp, _ = real_imag(j2_from_holomorphic(vals[k], d1[k], d2[k]))
            value[k] = comp.f
            dx[0, k] = comp.fx
            dx[1, k] = comp.fy
            dxx[0, k] = comp.fxx
            dxx[1, k] = comp.fxy
            dxx[2, k] = comp.fyy
        return Jet2Point(value=value, d1=dx, d2=dxx)

    def normal_j1(self, z: complex) -> tuple[np.ndarray, np.ndarray]:
        """Unit normal n = Xx ^ Xy / |Xx ^ Xy| with exact first derivatives.

        Returns (n, dn) with dn of shape (2, 3).
        """
        jet = self.jet(z)
        xx = [J1(jet.d1[0][i], jet.d2[0][i], jet.d2[1][i]) for i in range(3)]
        xy = [J1(jet.d1[1][i], jet.d2[1][i], jet.d2[2][i]) for i in range(3)]
        cr = cross3_j1(xx, xy)
        nn = cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2]
        if nn.f <= 1e-28:
            raise SingularMetricError(f"{self.name}: normal degenerates at z={z}")
        inv = nn.sqrt().reciprocal()
        unit = [inv * c for c in cr]
        n = np.array([c.f for c in unit])
        dn = np.array([[c.fx for c in unit], [c.fy for c in unit]])
        return n, dn


def _catenoid(z: complex) -> _Triple:
    ch, sh = cmath.cosh(z), cmath.sinh(z)
    return (
        (ch, -1j * sh, z),
        (sh, -1j * ch, 1.0 + 0j),
        (ch, -1j * sh, 0.0 + 0j),
    )


def _helicoid(z: complex) -> _Triple:
    ch, sh = cmath.cosh(z), cmath.sinh(z)
    return (
        (sh, -1j * ch, -1j * z),
        (ch, -1j * sh, -1j + 0j),
        (sh, -1j * ch, 0.0 + 0j),
    )


def _enneper(z: complex) -> _Triple:
    z2 = z * z
    z3 = z2 * z
    return (
        (z - z3 / 3.0, -1j * (z + z3 / 3.0), z2),
        (1.0 - z2, -1j * (1.0 + z2), 2.0 * z),
        (-2.0 * z, -2j * z, 2.0 + 0j),
    )


def _plane(z: complex) -> _Triple:
    zero = 0.0 + 0j
    return ((z, -1j * z, zero), (1.0 + 0j, -1j, zero), (zero, zero, zero))


WEIERSTRASS_PRESETS = {
    "catenoid": WeierstrassData("catenoid", _catenoid),
    "helicoid": WeierstrassData("helicoid", _helicoid),
    "enneper": WeierstrassData("enneper", _enneper),
    "plane": WeierstrassData("plane", _plane),
}


def weierstrass_preset(name: str) -> WeierstrassData:
    try:
        return WEIERSTRASS_PRESETS[name]
    except KeyError:
        raise ContractViolation(
            f"unknown minimal-surface preset {name!r}; "
            f"available: {sorted(WEIERSTRASS_PRESETS)}"
        ) from None
