"""Second-order jets of maps from a planar disc, and their arithmetic.

A Jet2Point packs the value, both first partials and the three second
partials of a map R^2 -> R^n at one parameter point.  Closed-form surfaces
produce jets through forward-mode arithmetic on the scalar classes J1 and
J2 (a jet-valued dual-number style evaluation); anything supplied as a bare
value function goes through the central-difference fallback with one
Richardson extrapolation level.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .errors import ContractViolation


class J1:
    """Scalar carrying value and first partials (f, fx, fy)."""

    __slots__ = ("f", "fx", "fy")

    def __init__(self, f, fx=0.0, fy=0.0):
        self.f = f
        self.fx = fx
        self.fy = fy

    def __add__(self, other):
        if isinstance(other, J1):
            return J1(self.f + other.f, self.fx + other.fx, self.fy + other.fy)
        return J1(self.f + other, self.fx, self.fy)

    __radd__ = __add__

    def __neg__(self):
        return J1(-self.f, -self.fx, -self.fy)

    def __sub__(self, other):
        return self + (-other if isinstance(other, J1) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, J1):
            return J1(
                self.f * other.f,
                self.fx * other.f + self.f * other.fx,
                self.fy * other.f + self.f * other.fy,
            )
        return J1(self.f * other, self.fx * other, self.fy * other)

    __rmul__ = __mul__

    def reciprocal(self):
        inv = 1.0 / self.f
        inv2 = inv * inv
        return J1(inv, -self.fx * inv2, -self.fy * inv2)

    def __truediv__(self, other):
        if isinstance(other, J1):
            return self * other.reciprocal()
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def sqrt(self):
        r = np.sqrt(self.f)
        half = 0.5 / r
        return J1(r, self.fx * half, self.fy * half)


class J2:
    """Scalar carrying value, first and second partials.

    Slots are (f, fx, fy, fxx, fxy, fyy); entries may be real or complex.
    """

    __slots__ = ("f", "fx", "fy", "fxx", "fxy", "fyy")

    def __init__(self, f, fx=0.0, fy=0.0, fxx=0.0, fxy=0.0, fyy=0.0):
        self.f = f
        self.fx = fx
        self.fy = fy
        self.fxx = fxx
        self.fxy = fxy
        self.fyy = fyy

    # -- ring operations -------------------------------------------------
    def __add__(self, other):
        if isinstance(other, J2):
            return J2(
                self.f + other.f,
                self.fx + other.fx,
                self.fy + other.fy,
                self.fxx + other.fxx,
                self.fxy + other.fxy,
                self.fyy + other.fyy,
            )
        return J2(self.f + other, self.fx, self.fy, self.fxx, self.fxy, self.fyy)

    __radd__ = __add__

    def __neg__(self):
        return J2(-self.f, -self.fx, -self.fy, -self.fxx, -self.fxy, -self.fyy)

    def __sub__(self, other):
        if isinstance(other, J2):
            return self + (-other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, J2):
            return J2(
                self.f * other.f,
                self.fx * other.f + self.f * other.fx,
                self.fy * other.f + self.f * other.fy,
                self.fxx * other.f + 2.0 * self.fx * other.fx + self.f * other.fxx,
                self.fxy * other.f + self.fx * other.fy + self.fy * other.fx + self.f * other.fxy,
                self.fyy * other.f + 2.0 * self.fy * other.fy + self.f * other.fyy,
            )
        return J2(
            self.f * other,
            self.fx * other,
            self.fy * other,
            self.fxx * other,
            self.fxy * other,
            self.fyy * other,
        )

    __rmul__ = __mul__

    def _compose(self, v, dv, ddv):
        """Chain rule for a smooth unary g with g(f)=v, g'(f)=dv, g''(f)=ddv."""
        return J2(
            v,
            dv * self.fx,
            dv * self.fy,
            ddv * self.fx * self.fx + dv * self.fxx,
            ddv * self.fx * self.fy + dv * self.fxy,
            ddv * self.fy * self.fy + dv * self.fyy,
        )

    def reciprocal(self):
        inv = 1.0 / self.f
        return self._compose(inv, -inv * inv, 2.0 * inv * inv * inv)

    def __truediv__(self, other):
        if isinstance(other, J2):
            return self * other.reciprocal()
        return self * (1.0 / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise ContractViolation("J2 powers are non-negative integers")
        out = J2(1.0)
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    # -- elementary functions --------------------------------------------
    def sqrt(self):
        r = np.sqrt(self.f)
        return self._compose(r, 0.5 / r, -0.25 / (r * self.f))

    def exp(self):
        e = np.exp(self.f)
        return self._compose(e, e, e)

    def sin(self):
        s, c = np.sin(self.f), np.cos(self.f)
        return self._compose(s, c, -s)

    def cos(self):
        s, c = np.sin(self.f), np.cos(self.f)
        return self._compose(c, -s, -c)

    def sinh(self):
        s, c = np.sinh(self.f), np.cosh(self.f)
        return self._compose(s, c, s)

    def cosh(self):
        s, c = np.sinh(self.f), np.cosh(self.f)
        return self._compose(c, s, c)

    def j1(self) -> J1:
        return J1(self.f, self.fx, self.fy)


def j2_vars(x: float, y: float) -> tuple[J2, J2]:
    """The two coordinate functions as J2 scalars at (x, y)."""
    return J2(float(x), 1.0, 0.0), J2(float(y), 0.0, 1.0)


def j2_from_holomorphic(value: complex, d1: complex, d2: complex) -> J2:
    """J2 of a holomorphic function of z = x + iy given its complex jet."""
    return J2(value, d1, 1j * d1, d2, 1j * d2, -d2)


def real_imag(j: J2) -> tuple[J2, J2]:
    """Split a complex-valued J2 into real and imaginary real-valued J2."""
    re = J2(j.f.real, j.fx.real, j.fy.real, j.fxx.real, j.fxy.real, j.fyy.real)
    im = J2(j.f.imag, j.fx.imag, j.fy.imag, j.fxx.imag, j.fxy.imag, j.fyy.imag)
    return re, im


@dataclass(frozen=True)
class Jet2Point:
    """Second-order jet of a map R^2 -> R^n at one point.

    d1 rows are (d/dx, d/dy); d2 rows are (d2/dxx, d2/dxdy, d2/dyy).
    """

    value: np.ndarray
    d1: np.ndarray
    d2: np.ndarray

    def __post_init__(self):
        n = self.value.shape[0]
        if self.d1.shape != (2, n) or self.d2.shape != (3, n):
            raise ContractViolation("jet slot shapes are (n,), (2, n), (3, n)")

    @property
    def dimension(self) -> int:
        return self.value.shape[0]


def jet_from_j2(components: Sequence[J2]) -> Jet2Point:
    """Assemble a Jet2Point from per-component J2 scalars."""
    value = np.array([c.f for c in components], dtype=float)
    d1 = np.array(
        [[c.fx for c in components], [c.fy for c in components]], dtype=float
    )
    d2 = np.array(
        [
            [c.fxx for c in components],
            [c.fxy for c in components],
            [c.fyy for c in components],
        ],
        dtype=float,
    )
    return Jet2Point(value, d1, d2)


def _central(fun, x: np.ndarray, direction: np.ndarray, h: float) -> np.ndarray:
    return (fun(x + h * direction) - fun(x - h * direction)) / (2.0 * h)


def fd_derivative(fun, x, direction, h: float, richardson: bool = True) -> np.ndarray:
    """Directional derivative by central differences.

    With richardson=True, combines steps h and h/2 to cancel the leading
    O(h^2) truncation term.
    """
    x = np.asarray(x, dtype=float)
    direction = np.asarray(direction, dtype=float)
    d_h = _central(fun, x, direction, h)
    if not richardson:
        return d_h
    d_half = _central(fun, x, direction, 0.5 * h)
    return (4.0 * d_half - d_h) / 3.0


def fd_second(fun, x, direction, h: float) -> np.ndarray:
    """Five-point second difference along a straight parameter line."""
    x = np.asarray(x, dtype=float)
    d = np.asarray(direction, dtype=float)
    f0 = fun(x)
    f1 = fun(x + h * d)
    f_1 = fun(x - h * d)
    f2 = fun(x + 2.0 * h * d)
    f_2 = fun(x - 2.0 * h * d)
    return (-f2 + 16.0 * f1 - 30.0 * f0 + 16.0 * f_1 - f_2) / (12.0 * h * h)


def fd_jet2(value_fun: Callable[[complex], np.ndarray], z: complex, h: float) -> Jet2Point:
    """Full second-order jet of a value-only surface by central differences.

    One Richardson level is applied to every slot.  value_fun takes the
    complex disc coordinate and returns the ambient coordinate vector.
    """

    def at(x, y):
        return np.asarray(value_fun(complex(x, y)), dtype=float)

    x0, y0 = z.real, z.imag

    def slots(step):
        fpx = at(x0 + step, y0)
        fmx = at(x0 - step, y0)
        fpy = at(x0, y0 + step)
        fmy = at(x0, y0 - step)
        fpp = at(x0 + step, y0 + step)
        fpm = at(x0 + step, y0 - step)
        fmp = at(x0 - step, y0 + step)
        fmm = at(x0 - step, y0 - step)
        f0 = at(x0, y0)
        dx = (fpx - fmx) / (2 * step)
        dy = (fpy - fmy) / (2 * step)
        dxx = (fpx - 2 * f0 + fmx) / (step * step)
        dyy = (fpy - 2 * f0 + fmy) / (step * step)
        dxy = (fpp - fpm - fmp + fmm) / (4 * step * step)
        return f0, np.stack([dx, dy]), np.stack([dxx, dxy, dyy])

    f_h, d1_h, d2_h = slots(h)
    _, d1_2, d2_2 = slots(0.5 * h)
    d1 = (4.0 * d1_2 - d1_h) / 3.0
    d2 = (4.0 * d2_2 - d2_h) / 3.0
    return Jet2Point(f_h, d1, d2)


def jet_d2_from_d1(
    d1_fun: Callable[[complex], np.ndarray], z: complex, h: float
) -> np.ndarray:
    """Second derivatives from an exact first-derivative field.

    d1_fun returns the (2, n) first-derivative stack; the mixed partial is
    averaged over its two finite-difference realisations, with one
    Richardson level on every slot.
    """

    def one(step):
        zx = complex(z.real + step, z.imag)
        zmx = complex(z.real - step, z.imag)
        zy = complex(z.real, z.imag + step)
        zmy = complex(z.real, z.imag - step)
        ddx = (d1_fun(zx) - d1_fun(zmx)) / (2 * step)   # d/dx of (gx, gy)
        ddy = (d1_fun(zy) - d1_fun(zmy)) / (2 * step)   # d/dy of (gx, gy)
        dxx = ddx[0]
        dyy = ddy[1]
        dxy = 0.5 * (ddx[1] + ddy[0])
        return np.stack([dxx, dxy, dyy])

    d2_h = one(h)
    d2_half = one(0.5 * h)
    return (4.0 * d2_half - d2_h) / 3.0
