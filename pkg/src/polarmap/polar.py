"""The three polar-map constructions over a conformal datum surface.

Each construction parametrizes a hypersurface of a 4-dimensional space form
by the normal directions of a branched minimal datum surface g:

* flat target:        Psi(z, t) = gamma g + dg(grad gamma) + t eta,
  over g in S3 with a support function gamma solving Lap(gamma) + 2 gamma = 0;
* sphere target:      Psi(z, t) = cos t eta3 + sin t eta4,
  over g in S4 with an orthonormal normal frame (eta3, eta4);
* hyperbolic target:  Psi(z, t) = cosh t eta3 + sinh t eta4,
  over a spacelike g in de Sitter space with eta3 timelike.

Every map evaluates exact first derivatives two independent ways: a direct
product-rule differentiation of the defining formula (``jet1``), and the
structural identity dPsi(X) = dg(P X) + omega(X) * (fiber direction) that the
curvature theory rests on.  ``identity_residual`` compares them, and the
induced metric is likewise computed both from the Gram matrix of ``jet1`` and
from the closed formula -det * <,>_g + (dt + omega)^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    ConstructionError,
    ContractViolation,
    FrameError,
    InvalidSupportError,
    SingularPointError,
)
from .jets import jet_d2_from_d1
from .spaces import DS4, H4, R4, S3, S4, AmbientSpace, inner
from .surface import (
    BranchedSurface,
    NormalFrame,
    conformal_factor,
    connection_form_34,
    frame_gram_residual,
    minimality_residual,
    normal_frame,
    shape_operator_from_jet,
    surface_normal_s3,
)

__all__ = [
    "CallableSupport",
    "EuclideanPolarMap",
    "HyperbolicPolarMap",
    "InnerSupport",
    "PolarOperatorSample",
    "RegularityResult",
    "SphericalPolarMap",
    "SupportFunction",
    "build_euclidean",
    "build_hyperbolic",
    "build_spherical",
    "hessian_gamma",
    "induced_metric",
    "induced_metric_formula",
    "metric_agreement",
    "operator_P",
    "principal_curvatures",
    "regularity_test",
]


@dataclass(frozen=True)
class PolarOperatorSample:
    """The 2x2 operator controlling regularity at one (z, t).

    ``kind`` is "P" for the flat construction (P = Hess + gamma I - t A_eta)
    and "A_w" for the sphere/hyperbolic ones.  ``scaled_det`` multiplies det
    by the declared branch factor prod |z - z0|^(2m), the quantity whose
    limit decides regularity over branch points.  ``omega`` holds the
    connection 1-form on (d/dx, d/dy).
    """

    z: complex
    t: float
    matrix: np.ndarray
    det: float
    scaled_det: float
    omega: np.ndarray
    kind: str


@dataclass(frozen=True)
class RegularityResult:
    """Outcome of :func:`regularity_test`.

    status is "regular", "singular", or "no-limit" (inconsistent ray limits
    over a branch point).  ``det`` is filled away from branch points;
    ``limit`` and ``ray_spread`` over them.
    """

    status: str
    at_branch: bool
    det: Optional[float] = None
    limit: Optional[float] = None
    ray_spread: Optional[float] = None

    @property
    def is_regular(self) -> bool:
        return self.status == "regular"


# ---------------------------------------------------------------------------
# Support functions for the flat construction.


class SupportFunction:
    """Scalar gamma on the chart with first and second derivatives."""

    def jet(self, z: complex) -> tuple[float, np.ndarray, np.ndarray]:
        """Return (gamma, (gx, gy), (gxx, gxy, gyy))."""
        raise NotImplementedError


class InnerSupport(SupportFunction):
    """gamma = <g, alpha> for a constant vector alpha.

    All derivatives come from the surface jets, so this family is exact and
    solves the Helmholtz identity automatically for minimal g in S3.
    """

    def __init__(self, surface: BranchedSurface, alpha: Sequence[float]) -> None:
        alpha = np.asarray(alpha, dtype=float)
        if alpha.shape != (surface.ambient.dimension,):
            raise ContractViolation(
                f"alpha must have {surface.ambient.dimension} components"
            )
        self.surface = surface
        self.alpha = alpha

    def jet(self, z: complex) -> tuple[float, np.ndarray, np.ndarray]:
        jet = self.surface.jet(z)
        sp = self.surface.ambient
        val = inner(jet.value, self.alpha, sp)
        d1 = np.array([inner(jet.d1[i], self.alpha, sp) for i in range(2)])
        d2 = np.array([inner(jet.d2[i], self.alpha, sp) for i in range(3)])
        return float(val), d1, d2


class CallableSupport(SupportFunction):
    """gamma given by a callable with exact value and first derivatives.

    Second derivatives are recovered by Richardson-extrapolated central
    differences of the exact gradient, which keeps their error near roundoff
    for smooth data.
    """

    def __init__(
        self,
        fn: Callable[[complex], tuple[float, np.ndarray]],
        h: float = DEFAULT_TOLS.fd_step_jet,
    ) -> None:
        self.fn = fn
        self.h = float(h)

    def jet(self, z: complex) -> tuple[float, np.ndarray, np.ndarray]:
        z = complex(z)
        val, d1 = self.fn(z)
        d1 = np.asarray(d1, dtype=float)

        def grad(w: complex) -> np.ndarray:
            return np.asarray(self.fn(w)[1], dtype=float)

        d2 = jet_d2_from_d1(grad, z, self.h)
        return float(val), d1, d2


def _metric_scale_and_derivatives(jet, sp) -> tuple[float, float, float]:
    gx, gy = jet.d1
    exx = inner(gx, gx, sp)
    eyy = inner(gy, gy, sp)
    e = 0.5 * (exx + eyy)
    ex = inner(jet.d2[0], gx, sp) + inner(jet.d2[1], gy, sp)
    ey = inner(jet.d2[1], gx, sp) + inner(jet.d2[2], gy, sp)
    return float(e), float(ex), float(ey)


def hessian_gamma(
    surface: BranchedSurface, support: SupportFunction, z: complex
) -> tuple[np.ndarray, np.ndarray, float]:
    """Gradient, Hessian operator and Laplacian of gamma in the datum metric.

    Returns (grad, hess, lap): grad holds the contravariant coordinate
    components of the gradient, hess the operator matrix (one index raised),
    and lap its trace.  For a conformal metric E(dx^2 + dy^2) the covariant
    Hessian is the coordinate Hessian corrected by first-derivative terms of
    E, and raising an index divides by E.
    """
    jet = surface.jet(z)
    sp = surface.ambient
    e, ex, ey = _metric_scale_and_derivatives(jet, sp)
    if e <= DEFAULT_TOLS.degenerate_factor:
        from .errors import SingularMetricError

        raise SingularMetricError(f"datum metric degenerates at z={z}")
    val, d1, d2 = support.jet(z)
    gx_, gy_ = d1
    gxx_, gxy_, gyy_ = d2
    ax = ex / (2.0 * e)
    ay = ey / (2.0 * e)
    hxx = gxx_ - ax * gx_ + ay * gy_
    hxy = gxy_ - ay * gx_ - ax * gy_
    hyy = gyy_ + ax * gx_ - ay * gy_
    hess = np.array([[hxx, hxy], [hxy, hyy]]) / e
    grad = np.array([gx_, gy_]) / e
    lap = (gxx_ + gyy_) / e
    return grad, hess, float(lap)


# ---------------------------------------------------------------------------
# The flat construction.


class EuclideanPolarMap:
    """Psi(z, t) = gamma g + dg(grad gamma) + t eta over g in S3."""

    kind = "euclidean"

    def __init__(
        self,
        surface: BranchedSurface,
        support: SupportFunction,
        t_range: tuple[float, float] = (-1.5, 1.5),
    ) -> None:
        self.surface = surface
        self.support = support
        self.t_range = (float(t_range[0]), float(t_range[1]))
        self.t_periodic = False
        self.target = R4
        self._hyper = None

    def eta(self, z: complex) -> tuple[np.ndarray, np.ndarray]:
        return surface_normal_s3(self.surface, z)

    def operator_sample(self, z: complex, t: float) -> PolarOperatorSample:
        z = complex(z)
        grad, hess, _ = hessian_gamma(self.surface, self.support, z)
        eta, _ = self.eta(z)
        jet = self.surface.jet(z)
        sp = self.surface.ambient
        a_eta = shape_operator_from_jet(jet, eta, sp)
        val = self.support.jet(z)[0]
        p = hess + val * np.eye(2) - float(t) * a_eta
        det = float(p[0, 0] * p[1, 1] - p[0, 1] * p[1, 0])
        e, _, _ = _metric_scale_and_derivatives(jet, sp)
        omega = e * (a_eta @ grad)
        return PolarOperatorSample(
            z=z,
            t=float(t),
            matrix=p,
            det=det,
            scaled_det=self.surface.branch_scale(z) * det,
            omega=omega,
            kind="P",
        )

    def value(self, z: complex, t: float) -> np.ndarray:
        return self.jet1(z, t)[0]

    def jet1(self, z: complex, t: float) -> tuple[np.ndarray, np.ndarray]:
        """Value and exact first derivatives (rows d/dx, d/dy, d/dt).

        Assembled by direct product-rule differentiation of the defining
        formula; the structural identity route lives in
        :meth:`identity_residual` as an independent check.
        """
        z = complex(z)
        jet = self.surface.jet(z)
        sp = self.surface.ambient
        e, ex, ey = _metric_scale_and_derivatives(jet, sp)
        val, d1s, d2s = self.support.jet(z)
        gx_, gy_ = d1s
        gxx_, gxy_, gyy_ = d2s
        a = gx_ / e
        b = gy_ / e
        a_x = (gxx_ * e - gx_ * ex) / (e * e)
        a_y = (gxy_ * e - gx_ * ey) / (e * e)
        b_x = (gxy_ * e - gy_ * ex) / (e * e)
        b_y = (gyy_ * e - gy_ * ey) / (e * e)
        eta, deta = self.eta(z)
        g = jet.value
        gx, gy = jet.d1
        gxx, gxy, gyy = jet.d2
        value = val * g + a * gx + b * gy + float(t) * eta
        px = gx_ * g + val * gx + a_x * gx + a * gxx + b_x * gy + b * gxy + t * deta[0]
        py = gy_ * g + val * gy + a_y * gx + a * gxy + b_y * gy + b * gyy + t * deta[1]
        pt = eta
        return value, np.stack([px, py, pt])

    def xi_jet(self, z: complex) -> tuple[np.ndarray, np.ndarray]:
        """Unit normal xi(z, t) = g(z) of the image and its derivatives."""
        jet = self.surface.jet(z)
        dxi = np.vstack([jet.d1, np.zeros((1, jet.dimension))])
        return jet.value, dxi

    def identity_residual(self, z: complex, t: float) -> float:
        """Deviation of jet1 from dPsi(X) = dg(P X) + omega(X) eta."""
        s = self.operator_sample(z, t)
        jet = self.surface.jet(z)
        eta, _ = self.eta(z)
        _, d1 = self.jet1(z, t)
        worst = 0.0
        for i in range(2):
            rhs = s.matrix[0, i] * jet.d1[0] + s.matrix[1, i] * jet.d1[1]
            rhs = rhs + s.omega[i] * eta
            num = float(np.linalg.norm(d1[i] - rhs))
            worst = max(worst, num / (1.0 + float(np.linalg.norm(d1[i]))))
        return worst

    def metric_formula(self, z: complex, t: float) -> np.ndarray:
        s = self.operator_sample(z, t)
        jet = self.surface.jet(z)
        e, _, _ = _metric_scale_and_derivatives(jet, self.surface.ambient)
        return _assemble_metric(-s.det * e, s.omega)

    def metric_gram(self, z: complex, t: float) -> np.ndarray:
        _, d1 = self.jet1(z, t)
        return np.array(
            [[inner(d1[i], d1[j], self.target) for j in range(3)] for i in range(3)]
        )

    def quadric_residual(self, z: complex, t: float) -> float:
        return 0.0  # flat target carries no quadric constraint

    def hypersurface(self):
        if self._hyper is None:
            self._hyper = _as_hypersurface(self)
        return self._hyper


# ---------------------------------------------------------------------------
# The sphere and hyperbolic constructions share the frame mechanics.


class _FramePolarMap:
    kind = "frame"

    def __init__(
        self,
        surface: BranchedSurface,
        t_range: tuple[float, float],
        t_periodic: bool,
        target: AmbientSpace,
    ) -> None:
        self.surface = surface
        self.t_range = (float(t_range[0]), float(t_range[1]))
        self.t_periodic = t_periodic
        self.target = target
        self._hyper = None

    def _coeffs(self, t: float) -> tuple[float, float, float, float]:
        """(c3, c4) with Psi = c3 eta3 + c4 eta4, and their t-derivatives."""
        raise NotImplementedError

    def frame(self, z: complex) -> NormalFrame:
        return normal_frame(self.surface, z)

    def normal_section(self, z: complex, t: float) -> np.ndarray:
        c3, c4, _, _ = self._coeffs(t)
        fr = self.frame(z)
        return c3 * fr.values[0] + c4 * fr.values[1]

    def operator_sample(self, z: complex, t: float) -> PolarOperatorSample:
        z = complex(z)
        fr = self.frame(z)
        c3, c4, _, _ = self._coeffs(t)
        w = c3 * fr.values[0] + c4 * fr.values[1]
        jet = self.surface.jet(z)
        a_w = shape_operator_from_jet(jet, w, self.surface.ambient)
        det = float(a_w[0, 0] * a_w[1, 1] - a_w[0, 1] * a_w[1, 0])
        omega = connection_form_34(self.surface, z, fr)
        return PolarOperatorSample(
            z=z,
            t=float(t),
            matrix=a_w,
            det=det,
            scaled_det=self.surface.branch_scale(z) * det,
            omega=omega,
            kind="A_w",
        )

    def value(self, z: complex, t: float) -> np.ndarray:
        c3, c4, _, _ = self._coeffs(t)
        fr = self.frame(z)
        return c3 * fr.values[0] + c4 * fr.values[1]

    def jet1(self, z: complex, t: float) -> tuple[np.ndarray, np.ndarray]:
        c3, c4, d3, d4 = self._coeffs(t)
        fr = self.frame(z)
        value = c3 * fr.values[0] + c4 * fr.values[1]
        px = c3 * fr.d1[0][0] + c4 * fr.d1[1][0]
        py = c3 * fr.d1[0][1] + c4 * fr.d1[1][1]
        pt = d3 * fr.values[0] + d4 * fr.values[1]
        return value, np.stack([px, py, pt])

    def xi_jet(self, z: complex) -> tuple[np.ndarray, np.ndarray]:
        jet = self.surface.jet(z)
        dxi = np.vstack([jet.d1, np.zeros((1, jet.dimension))])
        return jet.value, dxi

    def identity_residual(self, z: complex, t: float) -> float:
        """Deviation of jet1 from dPsi(X) = -dg(A_w X) + omega(X) dPsi(dt)."""
        s = self.operator_sample(z, t)
        jet = self.surface.jet(z)
        _, d1 = self.jet1(z, t)
        pt = d1[2]
        worst = 0.0
        for i in range(2):
            rhs = -(s.matrix[0, i] * jet.d1[0] + s.matrix[1, i] * jet.d1[1])
            rhs = rhs + s.omega[i] * pt
            num = float(np.linalg.norm(d1[i] - rhs))
            worst = max(worst, num / (1.0 + float(np.linalg.norm(d1[i]))))
        return worst

    def metric_formula(self, z: complex, t: float) -> np.ndarray:
        s = self.operator_sample(z, t)
        jet = self.surface.jet(z)
        e, _, _ = _metric_scale_and_derivatives(jet, self.surface.ambient)
        return _assemble_metric(-s.det * e, s.omega)

    def metric_gram(self, z: complex, t: float) -> np.ndarray:
        _, d1 = self.jet1(z, t)
        return np.array(
            [[inner(d1[i], d1[j], self.target) for j in range(3)] for i in range(3)]
        )

    def hypersurface(self):
        if self._hyper is None:
            self._hyper = _as_hypersurface(self)
        return self._hyper


class SphericalPolarMap(_FramePolarMap):
    """Psi(z, t) = cos t eta3 + sin t eta4 into the unit sphere."""

    kind = "spherical"

    def __init__(
        self, surface: BranchedSurface, t_range: tuple[float, float] = (0.0, 2.0 * math.pi)
    ) -> None:
        super().__init__(surface, t_range, t_periodic=True, target=S4)

    def _coeffs(self, t: float) -> tuple[float, float, float, float]:
        c, s = math.cos(t), math.sin(t)
        return c, s, -s, c

    def quadric_residual(self, z: complex, t: float) -> float:
        v = self.value(z, t)
        return abs(inner(v, v, self.target) - 1.0)


class HyperbolicPolarMap(_FramePolarMap):
    """Psi(z, t) = cosh t eta3 + sinh t eta4 into the hyperboloid sheet."""

    kind = "hyperbolic"

    def __init__(
        self, surface: BranchedSurface, t_range: tuple[float, float] = (-1.5, 1.5)
    ) -> None:
        super().__init__(surface, t_range, t_periodic=False, target=H4)

    def _coeffs(self, t: float) -> tuple[float, float, float, float]:
        c, s = math.cosh(t), math.sinh(t)
        return c, s, s, c

    def quadric_residual(self, z: complex, t: float) -> float:
        v = self.value(z, t)
        res = abs(inner(v, v, self.target) + 1.0)
        if v[0] <= 0:
            raise ConstructionError(
                f"hyperbolic polar map left the x1 > 0 sheet at (z={z}, t={t})"
            )
        return res


def _assemble_metric(block: float, omega: np.ndarray) -> np.ndarray:
    m = np.empty((3, 3))
    m[0, 0] = block + omega[0] * omega[0]
    m[1, 1] = block + omega[1] * omega[1]
    m[0, 1] = m[1, 0] = omega[0] * omega[1]
    m[0, 2] = m[2, 0] = omega[0]
    m[1, 2] = m[2, 1] = omega[1]
    m[2, 2] = 1.0
    return m


# ---------------------------------------------------------------------------
# Builders with probe checks.

_PROBE_OFFSETS = (
    0.31 + 0.17j,
    -0.22 + 0.41j,
    0.12 - 0.33j,
    -0.41 - 0.19j,
    0.44 + 0.05j,
)


def _probe_points(surface: BranchedSurface) -> list[complex]:
    pts = []
    for off in _PROBE_OFFSETS:
        z = surface.center + 0.9 * surface.chart_radius * off
        bump = 0.07 + 0.05j
        for _ in range(8):
            if surface.branch_point_at(z, tol=1e-3) is None:
                break
            z += bump * surface.chart_radius
        pts.append(z)
    return pts


def _check_surface(surface: BranchedSurface, space: AmbientSpace, tols: Tolerances) -> None:
    if surface.ambient != space:
        raise ConstructionError(
            f"{surface.name}: datum must map into {space.name}, "
            f"got {surface.ambient.name}"
        )
    for z in _probe_points(surface):
        jet = surface.jet(z)
        q = inner(jet.value, jet.value, space)
        if abs(q - space.quadric) > tols.quadric:
            raise ConstructionError(
                f"{surface.name}: quadric constraint fails at z={z} "
                f"(<g,g> = {q:.12g})"
            )
        _, conf = conformal_factor(surface, z)
        if conf > tols.conformality:
            raise ConstructionError(
                f"{surface.name}: conformality residual {conf:.3e} at z={z}"
            )
        mini = minimality_residual(surface, z)
        if mini > tols.surface_minimality:
            raise ConstructionError(
                f"{surface.name}: minimality residual {mini:.3e} at z={z}"
            )


def build_euclidean(
    surface: BranchedSurface,
    support: SupportFunction,
    *,
    t_range: tuple[float, float] = (-1.5, 1.5),
    tols: Tolerances = DEFAULT_TOLS,
) -> EuclideanPolarMap:
    """Construct the flat polar map, verifying datum and support probes."""
    _check_surface(surface, S3, tols)
    for z in _probe_points(surface):
        val, _, _ = support.jet(z)
        _, _, lap = hessian_gamma(surface, support, z)
        res = abs(lap + 2.0 * val)
        if res > tols.support_helmholtz:
            raise InvalidSupportError(
                f"support function violates Lap(gamma) + 2 gamma = 0 at z={z} "
                f"(residual {res:.3e})"
            )
    return EuclideanPolarMap(surface, support, t_range)


def build_spherical(
    surface: BranchedSurface,
    *,
    t_range: tuple[float, float] = (0.0, 2.0 * math.pi),
    tols: Tolerances = DEFAULT_TOLS,
) -> SphericalPolarMap:
    """Construct the sphere polar map over a minimal datum in S4."""
    _check_surface(surface, S4, tols)
    for z in _probe_points(surface):
        fr = normal_frame(surface, z)
        res = frame_gram_residual(surface, z, fr)
        if res > tols.frame_gram:
            raise FrameError(
                f"{surface.name}: frame orthonormality residual {res:.3e} at z={z}"
            )
    return SphericalPolarMap(surface, t_range)


def build_hyperbolic(
    surface: BranchedSurface,
    *,
    t_range: tuple[float, float] = (-1.5, 1.5),
    tols: Tolerances = DEFAULT_TOLS,
) -> HyperbolicPolarMap:
    """Construct the hyperbolic polar map over a spacelike datum in de Sitter."""
    _check_surface(surface, DS4, tols)
    for z in _probe_points(surface):
        fr = normal_frame(surface, z)
        if fr.signs != (-1, 1):
            raise FrameError(
                f"{surface.name}: normal frame must be (timelike, spacelike), "
                f"got signs {fr.signs}"
            )
        res = frame_gram_residual(surface, z, fr)
        if res > tols.frame_gram:
            raise FrameError(
                f"{surface.name}: frame orthonormality residual {res:.3e} at z={z}"
            )
        if fr.values[0][0] <= 0:
            raise ConstructionError(
                f"{surface.name}: timelike frame member points off the x1 > 0 "
                f"sheet at z={z}; flip eta3"
            )
    return HyperbolicPolarMap(surface, t_range)


# ---------------------------------------------------------------------------
# Regularity and metrics.

PolarMap = EuclideanPolarMap | SphericalPolarMap | HyperbolicPolarMap


def operator_P(pmap: EuclideanPolarMap, z: complex, t: float) -> PolarOperatorSample:
    """The self-adjoint operator of the flat construction at (z, t)."""
    if not isinstance(pmap, EuclideanPolarMap):
        raise ContractViolation("operator_P applies to the flat construction only")
    return pmap.operator_sample(z, t)


def regularity_test(
    pmap: PolarMap, z: complex, t: float, tols: Tolerances = DEFAULT_TOLS
) -> RegularityResult:
    """Classify (z, t) as regular or singular.

    Away from declared branch points this is a banded determinant test.  At a
    declared branch point the operator itself degenerates with the chart, so
    the branch-scaled determinant is sampled along rays approaching the
    point, each ray is fit linearly in log-radius, and the fitted values at
    the innermost radius are averaged: the point is regular exactly when
    that limit is negative, with a spread diagnostic guarding fit quality.
    """
    z = complex(z)
    bp = pmap.surface.branch_point_at(z)
    if bp is None:
        s = pmap.operator_sample(z, t)
        scale = max(1.0, float(np.linalg.norm(s.matrix)))
        if abs(s.det) <= tols.singular_det_band * scale * scale:
            return RegularityResult(status="singular", at_branch=False, det=s.det)
        return RegularityResult(status="regular", at_branch=False, det=s.det)

    room = pmap.surface.chart_radius - abs(z - pmap.surface.center)
    hi = min(tols.branch_radius_hi, 0.8 * room)
    lo = tols.branch_radius_lo
    radii = np.geomspace(lo, hi, tols.branch_n_radii)
    log_r = np.log(radii)
    limits = []
    for k in range(tols.branch_n_rays):
        phase = np.exp(2j * math.pi * k / tols.branch_n_rays)
        vals = np.array(
            [pmap.operator_sample(z + r * phase, t).scaled_det for r in radii]
        )
        slope, intercept = np.polyfit(log_r, vals, 1)
        limits.append(intercept + slope * log_r[0])
    limits = np.array(limits)
    lmean = float(np.mean(limits))
    spread = float((np.max(limits) - np.min(limits)) / max(abs(lmean), 1e-30))
    if spread > tols.branch_ray_spread:
        return RegularityResult(
            status="no-limit", at_branch=True, limit=lmean, ray_spread=spread
        )
    if lmean < -tols.regular_limit_floor:
        return RegularityResult(
            status="regular", at_branch=True, limit=lmean, ray_spread=spread
        )
    return RegularityResult(
        status="singular", at_branch=True, limit=lmean, ray_spread=spread
    )


def induced_metric(
    pmap: PolarMap, z: complex, t: float, tols: Tolerances = DEFAULT_TOLS
) -> np.ndarray:
    """Gram matrix of dPsi in the (d/dx, d/dy, d/dt) frame."""
    res = regularity_test(pmap, z, t, tols)
    if not res.is_regular:
        raise SingularPointError(
            f"polar map is {res.status} at (z={z}, t={t}); no induced metric"
        )
    return pmap.metric_gram(z, t)


def induced_metric_formula(pmap: PolarMap, z: complex, t: float) -> np.ndarray:
    """The closed-form metric -det * E * I2 (+) (dt + omega)^2."""
    return pmap.metric_formula(z, t)


def metric_agreement(pmap: PolarMap, z: complex, t: float) -> float:
    """Relative difference between the Gram and formula metrics."""
    gram = pmap.metric_gram(z, t)
    form = pmap.metric_formula(z, t)
    return float(np.max(np.abs(gram - form)) / max(1.0, np.max(np.abs(gram))))


def principal_curvatures(
    pmap: PolarMap, z: complex, t: float, tols: Tolerances = DEFAULT_TOLS
) -> np.ndarray:
    """Principal curvatures of the image hypersurface, descending."""
    from .hypersurface import sample

    s = sample(pmap.hypersurface(), np.array([z.real, z.imag, t]), tols)
    return s.curvatures


def _as_hypersurface(pmap: PolarMap):
    from .hypersurface import HJet, Hypersurface3

    surf = pmap.surface
    half = surf.chart_radius / math.sqrt(2.0) * 0.95
    box = (
        (surf.center.real - half, surf.center.real + half),
        (surf.center.imag - half, surf.center.imag + half),
        pmap.t_range,
    )

    def evaluate(p: np.ndarray) -> HJet:
        z = complex(p[0], p[1])
        value, d1 = pmap.jet1(z, float(p[2]))
        xi, dxi = pmap.xi_jet(z)
        return HJet(value=value, d1=d1, xi=xi, dxi=dxi)

    return Hypersurface3(
        name=f"polar({surf.name})",
        ambient=pmap.target,
        eval_fn=evaluate,
        box=box,
        t_periodic=pmap.t_periodic,
    )
