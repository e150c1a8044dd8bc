"""Closed-form example constructors and the preset registry.

Everything the command line can build lives here: Clifford tori and their
embeddings as polar-map data, twistor-projected superminimal surfaces from
meromorphic pairs, cylinders over classical minimal surfaces, and their
hyperbolic counterparts through horosphere or equidistant charts.  Each
preset bundles the hypersurface with its polar construction (when one
exists), an independently built twin for cross-checking, and closed-form
predictions used by the test suite.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional, Sequence

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    ContractViolation,
    DegenerateSurfaceError,
    DomainError,
)
from .hypersurface import HJet, Hypersurface3
from .jets import (
    Jet2Point,
    j2_from_holomorphic,
    j2_vars,
    jet_d2_from_d1,
    jet_from_j2,
    real_imag,
)
from .polar import (
    CallableSupport,
    EuclideanPolarMap,
    HyperbolicPolarMap,
    InnerSupport,
    SphericalPolarMap,
    build_euclidean,
    build_hyperbolic,
    build_spherical,
)
from .quaternion import contact_pairing, project_components
from .rational import ONE, Poly, Rational, poly_gcd
from .spaces import DS4, S3, S4, inner
from .surface import BranchedSurface, BranchPoint, NormalFrame, surface_normal_s3
from .weierstrass import WEIERSTRASS_PRESETS, WeierstrassData, weierstrass_preset

__all__ = [
    "BryantCurve",
    "ExampleBundle",
    "GalleryPreset",
    "GeodesicPlane",
    "MeromorphicPair",
    "ModelChart",
    "PRESETS",
    "bryant_curve",
    "build_example",
    "clifford_datum_desitter",
    "clifford_datum_sphere",
    "clifford_torus",
    "conformal_gauss_map",
    "cylinder_over_r3_minimal",
    "euclidean_polar_twin_of_cylinder",
    "gauss_map_of_s3_minimal",
    "hyperbolic_cylinder",
    "hyperbolic_polar_twin_of_cylinder",
    "list_presets",
    "superminimal_surface",
]

_SQRT2 = math.sqrt(2.0)


# ---------------------------------------------------------------------------
# Clifford tori.


def _clifford_jet(z: complex, second_sign: float) -> Jet2Point:
    x, y = j2_vars(z.real, z.imag)
    s = second_sign / _SQRT2
    return jet_from_j2(
        [
            x.cos() * (1.0 / _SQRT2),
            x.sin() * (1.0 / _SQRT2),
            y.cos() * s,
            y.sin() * s,
        ]
    )


def clifford_torus(kind: str = "primal") -> BranchedSurface:
    """The square torus in the unit 3-sphere, or its normal ("dual") copy."""
    if kind == "primal":
        sign = 1.0
    elif kind == "dual":
        sign = -1.0
    else:
        raise ContractViolation(f"unknown Clifford torus kind {kind!r}")
    return BranchedSurface(
        f"clifford-{kind}",
        S3,
        lambda z: _clifford_jet(z, sign),
        chart_radius=7.0,
    )


def _pad_tail(arr: np.ndarray) -> np.ndarray:
    return np.concatenate([arr, np.zeros(arr.shape[:-1] + (1,))], axis=-1)


def _pad_head(arr: np.ndarray) -> np.ndarray:
    return np.concatenate([np.zeros(arr.shape[:-1] + (1,)), arr], axis=-1)


def clifford_datum_sphere() -> BranchedSurface:
    """Clifford torus in the equatorial 3-sphere of S4 with its normal frame.

    The frame is pinned to (normal inside the equator, pole direction e5);
    the closed-form determinant and singular-set predictions of the sphere
    polar map are stated in exactly this frame.
    """
    dual = clifford_torus("dual")
    primal = clifford_torus("primal")

    def jet(z: complex) -> Jet2Point:
        j = dual.jet(z)
        return Jet2Point(_pad_tail(j.value), _pad_tail(j.d1), _pad_tail(j.d2))

    e5 = np.zeros(5)
    e5[4] = 1.0

    def frame(z: complex) -> NormalFrame:
        pj = primal.jet(z)
        values = np.stack([_pad_tail(pj.value), e5])
        d1 = np.stack([_pad_tail(pj.d1), np.zeros((2, 5))])
        return NormalFrame(values=values, d1=d1, signs=(1, 1), seed_indices=(0, 1))

    return BranchedSurface(
        "clifford-dual-in-s4", S4, jet, frame_fn=frame, chart_radius=7.0
    )


def clifford_datum_desitter() -> BranchedSurface:
    """Clifford torus in the equatorial de Sitter slice with timelike frame."""
    dual = clifford_torus("dual")
    primal = clifford_torus("primal")

    def jet(z: complex) -> Jet2Point:
        j = dual.jet(z)
        return Jet2Point(_pad_head(j.value), _pad_head(j.d1), _pad_head(j.d2))

    e1 = np.zeros(5)
    e1[0] = 1.0

    def frame(z: complex) -> NormalFrame:
        pj = primal.jet(z)
        values = np.stack([e1, _pad_head(pj.value)])
        d1 = np.stack([np.zeros((2, 5)), _pad_head(pj.d1)])
        return NormalFrame(values=values, d1=d1, signs=(-1, 1), seed_indices=(0, 1))

    return BranchedSurface(
        "clifford-gauss-in-ds4", DS4, jet, frame_fn=frame, chart_radius=7.0
    )


# ---------------------------------------------------------------------------
# Gauss maps of minimal surfaces in the 3-sphere.


def gauss_map_of_s3_minimal(surface: BranchedSurface) -> BranchedSurface:
    """The unit normal of a minimal surface in S3 as a surface in S3.

    Value and first derivatives are exact; second derivatives come from
    Richardson-extrapolated differences of the exact first derivatives.
    A constant normal (totally geodesic input) is rejected.
    """
    if surface.ambient != S3:
        raise ContractViolation("gauss_map_of_s3_minimal expects a surface in S3")

    def d1_fn(z: complex) -> np.ndarray:
        _, deta = surface_normal_s3(surface, z)
        return deta

    def jet(z: complex) -> Jet2Point:
        eta, deta = surface_normal_s3(surface, z)
        d2 = jet_d2_from_d1(d1_fn, z, DEFAULT_TOLS.fd_step_jet)
        return Jet2Point(eta, deta, d2)

    probe = surface.center + 0.37 * surface.chart_radius * (0.61 + 0.33j)
    _, deta = surface_normal_s3(surface, probe)
    if float(np.max(np.abs(deta))) < 1e-8:
        raise DegenerateSurfaceError(
            f"{surface.name}: normal is constant (totally geodesic input); "
            "its image is a point, not a surface"
        )
    return BranchedSurface(
        f"gauss({surface.name})",
        S3,
        jet,
        branch_points=surface.branch_points,
        chart_radius=surface.chart_radius,
        center=surface.center,
        aux={"base": surface},
    )


def conformal_gauss_map(surface: BranchedSurface) -> BranchedSurface:
    """Central-sphere datum (0, normal) of a minimal surface in S3.

    Lands in the de Sitter quadric with the constant timelike direction and
    the base surface itself as normal frame.  Totally geodesic inputs give
    a degenerate (pointlike) image and are rejected.
    """
    gauss = gauss_map_of_s3_minimal(surface)

    def jet(z: complex) -> Jet2Point:
        j = gauss.jet(z)
        return Jet2Point(_pad_head(j.value), _pad_head(j.d1), _pad_head(j.d2))

    e1 = np.zeros(5)
    e1[0] = 1.0

    def frame(z: complex) -> NormalFrame:
        base = surface.jet(z)
        values = np.stack([e1, _pad_head(base.value)])
        d1 = np.stack([np.zeros((2, 5)), _pad_head(base.d1)])
        return NormalFrame(values=values, d1=d1, signs=(-1, 1), seed_indices=(0, 1))

    return BranchedSurface(
        f"central({surface.name})",
        DS4,
        jet,
        branch_points=surface.branch_points,
        frame_fn=frame,
        chart_radius=surface.chart_radius,
        center=surface.center,
        aux={"base": surface, "gauss": gauss},
    )


# ---------------------------------------------------------------------------
# Twistor data: meromorphic pairs, holomorphic curves, projection.


def _as_rational(coeffs) -> Rational:
    if isinstance(coeffs, Rational):
        return coeffs
    if isinstance(coeffs, Poly):
        return Rational(coeffs)
    num = Poly([Fraction(str(c)) for c in coeffs])
    return Rational(num)


@dataclass(frozen=True)
class MeromorphicPair:
    """Two rational functions generating a horizontal holomorphic curve."""

    phi: Rational
    psi: Rational

    def __post_init__(self):
        if self.psi.derivative().num.is_zero():
            raise DegenerateSurfaceError(
                "the second function of the pair is constant; the quotient "
                "dphi/dpsi that builds the curve is undefined"
            )

    @classmethod
    def from_coefficients(cls, phi: Sequence, psi: Sequence) -> "MeromorphicPair":
        """Build from ascending numerator coefficient lists (exact)."""
        return cls(_as_rational(phi), _as_rational(psi))


@dataclass(frozen=True)
class BryantCurve:
    """Projective curve [1 : c2 : c3 : c4] with exact rational components.

    ``contact`` is the symbolic contact pairing c2' + c3 c4' - c4 c3'; the
    construction makes it identically zero, which is what horizontality
    with respect to the twistor fibration means in this chart.
    """

    pair: MeromorphicPair
    c2: Rational
    c3: Rational
    c4: Rational
    contact: Rational

    @property
    def is_horizontal(self) -> bool:
        return self.contact.num.is_zero()

    def components(self) -> tuple[Rational, Rational, Rational, Rational]:
        return (Rational(ONE), self.c2, self.c3, self.c4)

    def jet2(self, z: complex) -> list[tuple[complex, complex, complex]]:
        return [comp.jet2(z) for comp in self.components()]

    def value(self, z: complex) -> np.ndarray:
        return np.array([comp.eval(z) for comp in self.components()])

    def derivative_value(self, z: complex) -> np.ndarray:
        return np.array([comp.derivative().eval(z) for comp in self.components()])

    def horizontality_residual(self, z: complex) -> float:
        return abs(contact_pairing(self.value(z), self.derivative_value(z)))


def bryant_curve(pair: MeromorphicPair) -> BryantCurve:
    """[1 : phi - psi dphi/dpsi / 2 : psi : dphi/dpsi / 2], exactly."""
    half = Rational(Poly([Fraction(1, 2)]))
    quotient = pair.phi.derivative() / pair.psi.derivative()
    c4 = half * quotient
    c2 = pair.phi - pair.psi * c4
    c3 = pair.psi
    contact = c2.derivative() + c3 * c4.derivative() - c4 * c3.derivative()
    return BryantCurve(pair=pair, c2=c2, c3=c3, c4=c4, contact=contact)


def _derivative_common_zeros(
    curve: BryantCurve, chart_radius: float, center: complex
) -> list[BranchPoint]:
    """Common zeros of the affine curve derivative, with multiplicities.

    The projection to the 4-sphere fails to immerse exactly where the curve
    derivative vanishes, and the branch order equals the vanishing order,
    which is the multiplicity of the root in the gcd of the derivative
    numerators.  Roots are located numerically from the exact gcd
    polynomial and clustered to recover multiplicities.
    """
    numerators = []
    for comp in (curve.c2, curve.c3, curve.c4):
        der = comp.derivative()
        if not der.num.is_zero():
            numerators.append(der.num)
    if not numerators:
        raise DegenerateSurfaceError("curve is constant; nothing to project")
    g = numerators[0]
    for other in numerators[1:]:
        g = poly_gcd(g, other)
    if g.degree() < 1:
        return []
    coeffs = [complex(c) for c in g.coeffs]
    roots = np.roots(list(reversed(coeffs)))
    clusters: list[list[complex]] = []
    for r in sorted(roots, key=lambda w: (round(w.real, 7), round(w.imag, 7))):
        for cluster in clusters:
            if abs(r - cluster[0]) < 1e-6:
                cluster.append(r)
                break
        else:
            clusters.append([r])
    points = []
    for cluster in clusters:
        loc = complex(np.mean(cluster))
        if abs(loc) < 1e-9:
            loc = 0j
        if abs(loc - center)1 if False else abs(loc - center) > 0.95 * chart_radius:
            continue
        points.append(BranchPoint(location=loc, order=len(cluster)))
    return points


def superminimal_surface(
    pair: MeromorphicPair,
    chart_radius: float = 0.6,
    center: complex = 0j,
    name: Optional[str] = None,
) -> BranchedSurface:
    """Project the horizontal curve of the pair to the unit 4-sphere.

    Jets are assembled by realifying the four complex component jets and
    pushing them through the quaternionic projection in jet arithmetic.
    Branch points are declared at the common zeros of the curve derivative
    inside the chart.
    """
    curve = bryant_curve(pair)

    def jet(z: complex) -> Jet2Point:
        z8 = []
        for value, d1, d2 in curve.jet2(z):
            re, im = real_imag(j2_from_holomorphic(value, d1, d2))
            z8.extend((re, im))
        return jet_from_j2(project_components(z8))

    branch_points = _derivative_common_zeros(curve, chart_radius, center)
    return BranchedSurface(
        name or "twistor-projection",
        S4,
        jet,
        branch_points=tuple(branch_points),
        chart_radius=chart_radius,
        center=center,
        aux={"curve": curve},
    )


# ---------------------------------------------------------------------------
# Cylinders over classical minimal surfaces.


def cylinder_over_r3_minimal(
    data: WeierstrassData,
    half_width: float = 1.2,
    t_half: float = 1.0,
) -> Hypersurface3:
    """f(z, t) = (X(z), t): the product of a minimal surface with a line."""

    def evaluate(p: np.ndarray) -> HJet:
        z = complex(p[0], p[1])
        j = data.jet(z)
        n, dn = data.normal_j1(z)
        value = np.concatenate([j.value, [p[2]]])
        d1 = np.zeros((3, 4))
        d1[0, :3] = j.d1[0]
        d1[1, :3] = j.d1[1]
        d1[2, 3] = 1.0
        xi = np.concatenate([n, [0.0]])
        dxi = np.zeros((3, 4))
        dxi[0, :3] = dn[0]
        dxi[1, :3] = dn[1]
        return HJet(value=value, d1=d1, xi=xi, dxi=dxi)

    from .spaces import R4

    return Hypersurface3(
        name=f"cylinder({data.name})",
        ambient=R4,
        eval_fn=evaluate,
        box=((-half_width, half_width), (-half_width, half_width), (-t_half, t_half)),
        t_periodic=False,
        aux={"weierstrass": data},
    )


def euclidean_polar_twin_of_cylinder(
    data: WeierstrassData,
    half_width: float = 1.2,
    t_half: float = 1.0,
) -> EuclideanPolarMap:
    """The same cylinder rebuilt through the flat polar construction.

    The datum is the surface normal placed in the equatorial 2-sphere of
    S3 and the support function is the classical support X . n of the
    minimal surface; the resulting map reproduces (X(z), t) pointwise.
    """
    probe_n, probe_dn = data.normal_j1(0.31 + 0.17j)
    if float(np.max(np.abs(probe_dn))) < 1e-10:
        raise DegenerateSurfaceError(
            f"{data.name}: constant normal direction; the normal does not "
            "parametrize a surface, so no polar twin exists"
        )

    def d1_fn(z: complex) -> np.ndarray:
        _, dn = data.normal_j1(z)
        return np.concatenate([dn, np.zeros((2, 1))], axis=1)

    def datum_jet(z: complex) -> Jet2Point:
        n, dn = data.normal_j1(z)
        value = np.concatenate([n, [0.0]])
        d1 = np.concatenate([dn, np.zeros((2, 1))], axis=1)
        d2 = jet_d2_from_d1(d1_fn, z, DEFAULT_TOLS.fd_step_jet)
        return Jet2Point(value, d1, d2)

    datum = BranchedSurface(
        f"normal({data.name})",
        S3,
        datum_jet,
        chart_radius=half_width * 2.0,
        aux={"weierstrass": data},
    )

    def support_fn(z: complex) -> tuple[float, np.ndarray]:
        j = data.jet(z)
        n, dn = data.normal_j1(z)
        val = float(j.value @ n)
        grad = np.array(
            [
                float(j.d1[0] @ n + j.value @ dn[0]),
                float(j.d1[1] @ n + j.value @ dn[1]),
            ]
        )
        return val, grad

    support = CallableSupport(support_fn)
    return build_euclidean(datum, support, t_range=(-t_half, t_half))


# ---------------------------------------------------------------------------
# Hyperbolic charts and cylinders.


@dataclass(frozen=True)
class ModelChart:
    """Isometric chart of a horosphere or equidistant hypersurface.

    The horosphere is the level ⟨x, e1+e2⟩ = -1 of the null covector and is
    intrinsically flat; the equidistant surface is the level x2 = l0 of a
    spacelike covector and is intrinsically a rescaled hyperbolic space.
    """

    kind: str
    level: float = 0.0

    def __post_init__(self):
        if self.kind not in ("horosphere", "equidistant"):
            raise ContractViolation(f"unknown chart kind {self.kind!r}")

    @classmethod
    def horosphere(cls) -> "ModelChart":
        return cls(kind="horosphere")

    @classmethod
    def equidistant(cls, level: float = 0.5) -> "ModelChart":
        return cls(kind="equidistant", level=float(level))


@dataclass(frozen=True)
class GeodesicPlane:
    """The totally geodesic slice u3 = 0 of a chart, as surface data."""

    name: str = "geodesic-plane"


def _horosphere_point(u: np.ndarray) -> np.ndarray:
    s = float(u @ u)
    return np.array([1.0 + 0.5 * s, 0.5 * s, u[0], u[1], u[2]])


def _horosphere_push(u: np.ndarray, du: np.ndarray) -> np.ndarray:
    w = float(u @ du)
    return np.array([w, w, du[0], du[1], du[2]])


_NULL_RAY = np.array([1.0, 1.0, 0.0, 0.0, 0.0])


def _horosphere_cylinder_jet(data: WeierstrassData, p: np.ndarray) -> HJet:
    z = complex(p[0], p[1])
    t = float(p[2])
    j = data.jet(z)
    n, dn = data.normal_j1(z)
    x = np.asarray(j.value, dtype=float)
    h = _horosphere_point(x)
    hx = _horosphere_push(x, j.d1[0])
    hy = _horosphere_push(x, j.d1[1])
    big_n = h - _NULL_RAY
    ch, sh = math.cosh(t), math.sinh(t)
    value = ch * h + sh * big_n
    d1 = np.stack([
        ch * hx + sh * hx,
        ch * hy + sh * hy,
        sh * h + ch * big_n,
    ])
    gam = float(x @ n)
    dgx = float(j.d1[0] @ n + x @ dn[0])
    dgy = float(j.d1[1] @ n + x @ dn[1])
    xi = np.array([gam, gam, n[0], n[1], n[2]])
    dxi = np.stack([
        np.array([dgx, dgx, dn[0][0], dn[0][1], dn[0][2]]),
        np.array([dgy, dgy, dn[1][0], dn[1][1], dn[1][2]]),
        np.zeros(5),
    ])
    return HJet(value=value, d1=d1, xi=xi, dxi=dxi)


def _equidistant_geodesic_jet(level: float, p: np.ndarray) -> HJet:
    a = math.sqrt(1.0 + level * level)
    x, y, t = float(p[0]), float(p[1]), float(p[2])
    y1 = math.sqrt(1.0 + x * x + y * y)
    h = np.array([a * y1, level, a * x, a * y, 0.0])
    hx = np.array([a * x / y1, 0.0, a, 0.0, 0.0])
    hy = np.array([a * y / y1, 0.0, 0.0, a, 0.0])
    big_n = np.array([level * y1, a, level * x, level * y, 0.0])
    nx = np.array([level * x / y1, 0.0, level, 0.0, 0.0])
    ny = np.array([level * y / y1, 0.0, 0.0, level, 0.0])
    ch, sh = math.cosh(t), math.sinh(t)
    value = ch * h + sh * big_n
    d1 = np.stack([
        ch * hx + sh * nx,
        ch * hy + sh * ny,
        sh * h + ch * big_n,
    ])
    xi = np.array([0.0, 0.0, 0.0, 0.0, 1.0])
    return HJet(value=value, d1=d1, xi=xi, dxi=np.zeros((3, 5)))


def hyperbolic_cylinder(
    chart: ModelChart,
    data,
    half_width: float = 1.2,
    t_half: float = 1.0,
) -> Hypersurface3:
    """F(z, t) = cosh t h(z) + sinh t N(z) inside the hyperbolic quadric.

    h is the surface pushed through the chart and N the chart hypersurface's
    own unit normal, so the t-lines are geodesics leaving the chart
    hypersurface orthogonally.  The hypersurface normal is the surface's
    in-chart normal, constant in t.
    """
    from .spaces import H4

    if chart.kind == "horosphere":
        if not isinstance(data, WeierstrassData):
            raise ContractViolation(
                "the flat horosphere chart carries Euclidean minimal surface "
                "data; for the geodesic plane use the equidistant chart"
            )
        eval_fn = lambda p: _horosphere_cylinder_jet(data, p)
        label = data.name
    else:
        if not isinstance(data, GeodesicPlane):
            raise ContractViolation(
                "the equidistant chart is intrinsically hyperbolic; Euclidean "
                "Weierstrass data is only minimal through the horosphere chart"
            )
        eval_fn = lambda p: _equidistant_geodesic_jet(chart.level, p)
        label = data.name
    return Hypersurface3(
        name=f"hyperbolic-cylinder({label})",
        ambient=H4,
        eval_fn=eval_fn,
        box=((-half_width, half_width), (-half_width, half_width), (-t_half, t_half)),
        t_periodic=False,
        aux={"chart": chart, "data": data},
    )


def hyperbolic_polar_twin_of_cylinder(
    data: WeierstrassData,
    half_width: float = 1.2,
    t_half: float = 1.0,
) -> HyperbolicPolarMap:
    """Rebuild the horosphere cylinder as a polar map over a de Sitter datum.

    The datum is the in-chart surface normal, which is spacelike and
    stationary; the frame is (chart point, chart normal), timelike first,
    and the polar map over it is pointwise the same hypersurface.
    """
    probe_n, probe_dn = data.normal_j1(0.31 + 0.17j)
    if float(np.max(np.abs(probe_dn))) < 1e-10:
        raise DegenerateSurfaceError(
            f"{data.name}: constant normal direction gives a degenerate "
            "de Sitter datum; no polar twin exists"
        )

    def nu_parts(z: complex):
        j = data.jet(z)
        n, dn = data.normal_j1(z)
        x = np.asarray(j.value, dtype=float)
        gam = float(x @ n)
        dgx = float(j.d1[0] @ n + x @ dn[0])
        dgy = float(j.d1[1] @ n + x @ dn[1])
        value = np.array([gam, gam, n[0], n[1], n[2]])
        d1 = np.stack([
            np.array([dgx, dgx, dn[0][0], dn[0][1], dn[0][2]]),
            np.array([dgy, dgy, dn[1][0], dn[1][1], dn[1][2]]),
        ])
        return value, d1, x, j

    def d1_fn(z: complex) -> np.ndarray:
        _, d1, _, _ = nu_parts(z)
        return d1

    def datum_jet(z: complex) -> Jet2Point:
        value, d1, _, _ = nu_parts(z)
        d2 = jet_d2_from_d1(d1_fn, z, DEFAULT_TOLS.fd_step_jet)
        return Jet2Point(value, d1, d2)

    def frame(z: complex) -> NormalFrame:
        j = data.jet(z)
        x = np.asarray(j.value, dtype=float)
        h = _horosphere_point(x)
        hx = _horosphere_push(x, j.d1[0])
        hy = _horosphere_push(x, j.d1[1])
        big_n = h - _NULL_RAY
        values = np.stack([h, big_n])
        d1 = np.stack([np.stack([hx, hy]), np.stack([hx, hy])])
        return NormalFrame(values=values, d1=d1, signs=(-1, 1), seed_indices=(0, 1))

    datum = BranchedSurface(
        f"chart-normal({data.name})",
        DS4,
        datum_jet,
        frame_fn=frame,
        chart_radius=half_width * 2.0,
        aux={"weierstrass": data},
    )
    return build_hyperbolic(datum, t_range=(-t_half, t_half))


# ---------------------------------------------------------------------------
# Preset registry.


@dataclass(frozen=True)
class ExampleBundle:
    """Everything a preset builds: map, hypersurface, twin, predictions."""

    name: str
    curvature: float
    hypersurface: Hypersurface3
    polar: Optional[object] = None
    twin: Optional[object] = None
    predictions: dict = field(default_factory=dict)
    validators: tuple[str, ...] = ()
    summary: str = ""


@dataclass(frozen=True)
class GalleryPreset:
    name: str
    summary: str
    curvature: float
    validators: tuple[str, ...]
    params_schema: dict
    factory: Callable[[dict], ExampleBundle]

    def build(self, params: Optional[dict] = None) -> ExampleBundle:
        params = dict(params or {})
        unknown = set(params) - set(self.params_schema)
        if unknown:
            raise ContractViolation(
                f"{self.name}: unknown parameters {sorted(unknown)}; "
                f"accepted: {sorted(self.params_schema)}"
            )
        return self.factory(params)


def _t_range_param(params: dict, default: tuple[float, float]) -> tuple[float, float]:
    t_range = params.get("t_range", default)
    t0, t1 = float(t_range[0]), float(t_range[1])
    if not t1 > t0:
        raise ContractViolation("t_range must be increasing")
    return (t0, t1)


def _sigma_flat(datum: BranchedSurface, alpha: np.ndarray):
    def sigma(z: complex) -> float:
        eta, _ = surface_normal_s3(datum, z)
        return float(inner(eta, alpha, S3))

    return sigma


def _build_clifford_flat(params: dict) -> ExampleBundle:
    t_range = _t_range_param(params, (1.0, 2.5))
    datum = clifford_torus("dual")
    alpha = np.array([1.0, 0.0, 0.0, 0.0])
    pmap = build_euclidean(datum, InnerSupport(datum, alpha), t_range=t_range)
    sigma = _sigma_flat(datum, alpha)
    predictions = {
        "det": lambda z, t: -((sigma(z) - t) ** 2),
        "k1": lambda z, t: 1.0 / abs(sigma(z) - t),
        "singular_t": (),
        "locus": "empty",
    }
    return ExampleBundle(
        name="clifford-flat-polar",
        curvature=0.0,
        hypersurface=pmap.hypersurface(),
        polar=pmap,
        predictions=predictions,
        validators=("curvature", "structure", "ruling", "locus", "regularity"),
        summary="flat polar map over the Clifford torus normal with a "
        "coordinate support function",
    )


def _build_clifford_sphere(params: dict) -> ExampleBundle:
    t_range = _t_range_param(params, (0.0, 2.0 * math.pi))
    datum = clifford_datum_sphere()
    pmap = build_spherical(datum, t_range=t_range)
    predictions = {
        "det": lambda z, t: -math.cos(t) ** 2,
        "k1": lambda z, t: 1.0 / abs(math.cos(t)),
        "singular_t": (math.pi / 2.0, 3.0 * math.pi / 2.0),
        "locus": "empty",
    }
    return ExampleBundle(
        name="clifford-sphere-polar",
        curvature=1.0,
        hypersurface=pmap.hypersurface(),
        polar=pmap,
        predictions=predictions,
        validators=("curvature", "structure", "ruling", "locus", "regularity"),
        summary="sphere polar map over the Clifford torus with the pinned "
        "(equator normal, pole) frame",
    )


def _build_clifford_hyperbolic(params: dict) -> ExampleBundle:
    t_range = _t_range_param(params, (0.4, 2.2))
    datum = clifford_datum_desitter()
    pmap = build_hyperbolic(datum, t_range=t_range)
    predictions = {
        "det": lambda z, t: -math.sinh(t) ** 2,
        "k1": lambda z, t: 1.0 / abs(math.sinh(t)),
        "singular_t": (),
        "locus": "empty",
    }
    return ExampleBundle(
        name="clifford-hyperbolic-polar",
        curvature=-1.0,
        hypersurface=pmap.hypersurface(),
        polar=pmap,
        predictions=predictions,
        validators=("curvature", "structure", "ruling", "locus", "regularity"),
        summary="hyperbolic polar map over the Clifford torus seen in the "
        "de Sitter quadric",
    )


def _build_bryant(params: dict) -> ExampleBundle:
    phi = params.get("phi", [0, 0, 0, 0, 0, 1])
    psi = params.get("psi", [0, 0, 1])
    chart_radius = float(params.get("chart_radius", 0.6))
    t_range = _t_range_param(params, (0.0, 2.0 * math.pi))
    pair = MeromorphicPair.from_coefficients(phi, psi)
    datum = superminimal_surface(pair, chart_radius=chart_radius)
    pmap = build_spherical(datum, t_range=t_range)
    fiber = datum.branch_points[0].location if datum.branch_points else None
    predictions = {
        "singular_t": (),
        "locus": "fiber" if fiber is not None else "empty",
        "fiber": fiber,
    }
    return ExampleBundle(
        name="bryant-z5-z2-polar",
        curvature=1.0,
        hypersurface=pmap.hypersurface(),
        polar=pmap,
        predictions=predictions,
        validators=("curvature", "ruling", "locus", "regularity"),
        summary="sphere polar map over the twistor projection of the "
        "horizontal curve of a meromorphic pair",
    )


def _build_cylinder(preset_name: str, data_name: str, params: dict) -> ExampleBundle:
    half_width = float(params.get("half_width", 1.2))
    t_half = float(params.get("t_half", 1.0))
    data = weierstrass_preset(data_name)
    hyp = cylinder_over_r3_minimal(data, half_width=half_width, t_half=t_half)
    twin = None
    validators: tuple[str, ...]
    if data_name == "plane":
        validators = ("curvature",)
        locus = "everything"
    else:
        twin = euclidean_polar_twin_of_cylinder(
            data, half_width=half_width, t_half=t_half
        )
        validators = ("curvature", "structure", "ruling", "locus", "regularity")
        locus = "empty"
    return ExampleBundle(
        name=preset_name,
        curvature=0.0,
        hypersurface=hyp,
        polar=None,
        twin=twin,
        predictions={"singular_t": (), "locus": locus},
        validators=validators,
        summary=f"product of the {data_name} minimal surface with a line",
    )


def _build_hyperbolic_cylinder_catenoid(params: dict) -> ExampleBundle:
    half_width = float(params.get("half_width", 1.2))
    t_half = float(params.get("t_half", 1.0))
    data = weierstrass_preset("catenoid")
    hyp = hyperbolic_cylinder(
        ModelChart.horosphere(), data, half_width=half_width, t_half=t_half
    )
    twin = hyperbolic_polar_twin_of_cylinder(
        data, half_width=half_width, t_half=t_half
    )
    return ExampleBundle(
        name="hyperbolic-cylinder-catenoid",
        curvature=-1.0,
        hypersurface=hyp,
        polar=None,
        twin=twin,
        predictions={"singular_t": (), "locus": "empty"},
        validators=("curvature", "structure", "ruling", "locus", "regularity"),
        summary="catenoid pushed through the flat horosphere chart and "
        "extended along the chart normal",
    )


def _build_hyperbolic_cylinder_geodesic(params: dict) -> ExampleBundle:
    level = float(params.get("level", 0.5))
    half_width = float(params.get("half_width", 0.8))
    t_half = float(params.get("t_half", 0.8))
    hyp = hyperbolic_cylinder(
        ModelChart.equidistant(level),
        GeodesicPlane(),
        half_width=half_width,
        t_half=t_half,
    )
    return ExampleBundle(
        name="hyperbolic-cylinder-geodesic",
        curvature=-1.0,
        hypersurface=hyp,
        polar=None,
        predictions={"singular_t": (), "locus": "everything"},
        validators=("curvature",),
        summary="totally geodesic slice through the equidistant chart; the "
        "image is an open piece of a hyperbolic hyperplane",
    )


def _make_presets() -> dict[str, GalleryPreset]:
    presets = {}

    def add(name, summary, curvature, validators, schema, factory):
        presets[name] = GalleryPreset(
            name=name,
            summary=summary,
            curvature=curvature,
            validators=validators,
            params_schema=schema,
            factory=factory,
        )

    t_schema = {"t_range": "pair [t_min, t_max] for the fiber coordinate"}
    add(
        "clifford-flat-polar",
        "flat polar map over the Clifford torus normal",
        0.0,
        ("curvature", "structure", "ruling", "locus", "regularity"),
        t_schema,
        _build_clifford_flat,
    )
    add(
        "clifford-sphere-polar",
        "sphere polar map over the Clifford torus (pinned frame)",
        1.0,
        ("curvature", "structure", "ruling", "locus", "regularity"),
        t_schema,
        _build_clifford_sphere,
    )
    add(
        "clifford-hyperbolic-polar",
        "hyperbolic polar map over the Clifford torus in the de Sitter quadric",
        -1.0,
        ("curvature", "structure", "ruling", "locus", "regularity"),
        t_schema,
        _build_clifford_hyperbolic,
    )
    add(
        "bryant-z5-z2-polar",
        "sphere polar map over a twistor-projected superminimal surface",
        1.0,
        ("curvature", "ruling", "locus", "regularity"),
        {
            "phi": "ascending coefficients of the first rational function",
            "psi": "ascending coefficients of the second rational function",
            "chart_radius": "radius of the working disk",
            "t_range": "pair [t_min, t_max] for the fiber coordinate",
        },
        _build_bryant,
    )
    cyl_schema = {
        "half_width": "half-width of the square chart box",
        "t_half": "half-length of the line factor",
    }
    for wname in ("catenoid", "helicoid", "enneper", "plane"):
        add(
            f"cylinder-{wname}",
            f"product of the {wname} minimal surface with a line",
            0.0,
            ("curvature",) if wname == "plane" else (
                "curvature", "structure", "ruling", "locus", "regularity"
            ),
            cyl_schema,
            (lambda wn: lambda params: _build_cylinder(f"cylinder-{wn}", wn, params))(
                wname
            ),
        )
    add(
        "hyperbolic-cylinder-catenoid",
        "catenoid through the horosphere chart, extended along its normal",
        -1.0,
        ("curvature", "structure", "ruling", "locus", "regularity"),
        cyl_schema,
        _build_hyperbolic_cylinder_catenoid,
    )
    add(
        "hyperbolic-cylinder-geodesic",
        "totally geodesic plane through the equidistant chart",
        -1.0,
        ("curvature",),
        {**cyl_schema, "level": "offset of the equidistant hypersurface"},
        _build_hyperbolic_cylinder_geodesic,
    )
    return presets


PRESETS = _make_presets()


def list_presets(substring: str = "") -> list[GalleryPreset]:
    """Presets whose name contains the filter, sorted by name."""
    return [
        PRESETS[name]
        for name in sorted(PRESETS)
        if substring.lower() in name.lower()
    ]


def build_example(name: str, params: Optional[dict] = None) -> ExampleBundle:
    """Build a registry preset by name; unknown names are config errors."""
    if name not in PRESETS:
        raise ContractViolation(
            f"unknown example {name!r}; run the listing to see valid names"
        )
    return PRESETS[name].build(params)
