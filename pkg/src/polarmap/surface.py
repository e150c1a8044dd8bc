"""Branched conformal surfaces evaluated through exact 2-jets.

The central object is :class:`BranchedSurface`: a conformal map from a plane
chart into one of the ambient quadrics, returning value, first and second
derivatives at every point.  Everything downstream (shape operators, normal
frames, polar maps) consumes these jets, so no routine here differentiates
numerically unless a constructor explicitly wrapped a value-only map in the
finite-difference fallback from :mod:`polarmap.jets`.

Branch points are declared data, not detected facts: a constructor that knows
its conformal factor vanishes at ``z0`` to order ``m`` records a
:class:`BranchPoint`.  :func:`branch_order_estimate` recovers the order
numerically and is used as a diagnostic and as a test oracle for the declared
values.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    ContractViolation,
    DegenerateSurfaceError,
    DomainError,
    FrameError,
    SingularMetricError,
)
from .jets import J1, Jet2Point
from .spaces import AmbientSpace, inner

__all__ = [
    "BranchPoint",
    "BranchedSurface",
    "NormalFrame",
    "branch_order_estimate",
    "conformal_factor",
    "connection_form_34",
    "ellipse_axes",
    "frame_gram_residual",
    "gram_schmidt_frame",
    "minimality_residual",
    "normal_frame",
    "shape_operator",
    "shape_operator_from_jet",
    "surface_csv",
    "surface_normal_s3",
]

# Conformal factors below this are treated as exactly degenerate.  The bound
# is far under any radius the regularity ray scans reach (E ~ |z|^2m with
# radii down to 1e-3), so only true branch points trip it.
_E_FLOOR = DEFAULT_TOLS.degenerate_factor


@dataclass(frozen=True)
class BranchPoint:
    """A declared isolated zero of the conformal factor."""

    location: complex
    order: int

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ContractViolation(
                f"branch order must be a positive integer, got {self.order}"
            )


class BranchedSurface:
    """A conformal surface given by a 2-jet evaluator.

    Parameters
    ----------
    name:
        Identifier used in reports and error messages.
    ambient:
        Target :class:`~polarmap.spaces.AmbientSpace`.
    jet_fn:
        Map ``z -> Jet2Point`` with ambient-dimension components.
    branch_points:
        Declared :class:`BranchPoint` list (may be empty).
    frame_fn:
        Optional closed-form normal frame, ``z -> NormalFrame``.  When absent
        a deterministic Gram-Schmidt frame is constructed on demand.
    chart_radius, center:
        Evaluation is restricted to ``|z - center| <= chart_radius``.
    """

    def __init__(
        self,
        name: str,
        ambient: AmbientSpace,
        jet_fn: Callable[[complex], Jet2Point],
        *,
        branch_points: Sequence[BranchPoint] = (),
        frame_fn: Optional[Callable[[complex], "NormalFrame"]] = None,
        chart_radius: float = 2.0,
        center: complex = 0j,
        aux: Optional[dict] = None,
    ) -> None:
        self.name = name
        self.ambient = ambient
        self._jet_fn = jet_fn
        self.branch_points = tuple(branch_points)
        self.frame_fn = frame_fn
        self.chart_radius = float(chart_radius)
        self.center = complex(center)
        self.aux = dict(aux) if aux else {}
        self._frame_seeds: Optional[tuple[int, ...]] = None

    def __repr__(self) -> str:  # pragma: no cover - debugging nicety
        return f"BranchedSurface({self.name!r}, ambient={self.ambient.name})"

    def jet(self, z: complex) -> Jet2Point:
        z = complex(z)
        if abs(z - self.center) > self.chart_radius * (1 + 1e-12):
            raise DomainError(
                f"{self.name}: z={z} outside chart of radius "
                f"{self.chart_radius} around {self.center}"
            )
        jet = self._jet_fn(z)
        if jet.value.shape != (self.ambient.dimension,):
            raise ContractViolation(
                f"{self.name}: jet dimension {jet.value.shape} does not match "
                f"ambient dimension {self.ambient.dimension}"
            )
        return jet

    def branch_point_at(self, z: complex, tol: float = 1e-9) -> Optional[BranchPoint]:
        for bp in self.branch_points:
            if abs(complex(z) - bp.location) <= tol:
                return bp
        return None

    def branch_scale(self, z: complex) -> float:
        """Product of |z - z0|^(2m) over all declared branch points."""
        s = 1.0
        for bp in self.branch_points:
            s *= abs(complex(z) - bp.location) ** (2 * bp.order)
        return s

    # Seeds for the Gram-Schmidt frame are chosen once per surface at a fixed
    # anchor point and then reused chart-wide, which keeps the frame a smooth
    # function of z (a per-point greedy choice could switch seeds between
    # neighbouring points and tear the frame).
    def _ensure_frame_seeds(self) -> tuple[int, ...]:
        if self._frame_seeds is None:
            anchor = self.center + self.chart_radius * (0.171 + 0.113j)
            if self.branch_point_at(anchor, tol=1e-6) is not None:
                anchor = self.center + self.chart_radius * (0.233 - 0.149j)
            self._frame_seeds = _select_frame_seeds(self, anchor)
        return self._frame_seeds


@dataclass(frozen=True)
class NormalFrame:
    """Orthonormal normal pair (eta3, eta4) with exact first derivatives.

    ``values`` has shape (2, n); ``d1`` has shape (2, 2, n) indexed by
    (member, x-or-y, component).  ``signs`` holds the self inner products,
    (-1, 1) for a timelike-spacelike pair, (1, 1) in Riemannian targets.
    """

    values: np.ndarray
    d1: np.ndarray
    signs: tuple[int, int]
    seed_indices: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        if self.values.shape[0] != 2 or self.d1.shape[:2] != (2, 2):
            raise ContractViolation("NormalFrame arrays have the wrong shape")


def conformal_factor(surface: BranchedSurface, z: complex) -> tuple[float, float]:
    """Return (E, residual) where E is the conformal factor at z.

    The residual is max(|<gx,gx> - <gy,gy>|, 2|<gx,gy>|) and vanishes for an
    exactly conformal parametrization.
    """
    jet = surface.jet(z)
    sp = surface.ambient
    gx, gy = jet.d1
    exx = inner(gx, gx, sp)
    eyy = inner(gy, gy, sp)
    exy = inner(gx, gy, sp)
    e = 0.5 * (exx + eyy)
    residual = max(abs(exx - eyy), 2.0 * abs(exy))
    return float(e), float(residual)


def shape_operator_from_jet(jet: Jet2Point, w: np.ndarray, space: AmbientSpace) -> np.ndarray:
    """Shape operator of a conformal surface with respect to the normal w.

    In a conformal parametrization the operator matrix in the coordinate
    frame, <d2 g, w>/E, is already the matrix in an orthonormal frame, hence
    symmetric.
    """
    gx, gy = jet.d1
    e = 0.5 * (inner(gx, gx, space) + inner(gy, gy, space))
    if e <= _E_FLOOR:
        raise SingularMetricError(
            f"conformal factor {e:.3e} below floor; evaluation at a branch point"
        )
    ii = np.array(
        [
            [inner(jet.d2[0], w, space), inner(jet.d2[1], w, space)],
            [inner(jet.d2[1], w, space), inner(jet.d2[2], w, space)],
        ]
    )
    return ii / e


def shape_operator(surface: BranchedSurface, z: complex, w: np.ndarray) -> np.ndarray:
    return shape_operator_from_jet(surface.jet(z), w, surface.ambient)


def minimality_residual(surface: BranchedSurface, z: complex) -> float:
    """Euclidean norm of the normal-to-the-surface part of the chart Laplacian.

    For a minimal surface the Laplacian of the position lies in the span of
    the position (quadric reaction term) and the tangents, so the projection
    away from that span vanishes.
    """
    jet = surface.jet(z)
    sp = surface.ambient
    lap = jet.d2[0] + jet.d2[2]
    basis = [jet.d1[0], jet.d1[1]]
    if sp.quadric is not None:
        basis.append(jet.value)
    gmat = np.array([[inner(a, b, sp) for b in basis] for a in basis])
    rhs = np.array([inner(lap, b, sp) for b in basis])
    try:
        coeff = np.linalg.solve(gmat, rhs)
    except np.linalg.LinAlgError as exc:
        raise SingularMetricError(f"degenerate tangent Gram matrix at z={z}") from exc
    rem = lap - sum(c * b for c, b in zip(coeff, basis))
    return float(np.linalg.norm(rem))


def branch_order_estimate(
    surface: BranchedSurface, z0: complex, tols: Tolerances = DEFAULT_TOLS
) -> float:
    """Estimate the branch order at z0 from the decay of the conformal factor.

    Samples E on rays around z0, fits log E against log r pooled over all
    rays, and returns slope/2.  An immersed point estimates near 0; a branch
    point of order m estimates near m.
    """
    z0 = complex(z0)
    room = surface.chart_radius - abs(z0 - surface.center)
    hi = min(tols.branch_radius_hi, 0.8 * room)
    lo = tols.branch_radius_lo
    if hi <= lo:
        raise DomainError(
            f"no room around z={z0} for the ray scan (available radius {room:.3e})"
        )
    radii = np.geomspace(lo, hi, tols.branch_n_radii)
    logs_r = []
    logs_e = []
    for k in range(tols.branch_n_rays):
        phase = np.exp(2j * math.pi * k / tols.branch_n_rays)
        for r in radii:
            e, _ = conformal_factor(surface, z0 + r * phase)
            if e <= 0.0:
                raise DegenerateSurfaceError(
                    f"conformal factor non-positive at z={z0 + r * phase}"
                )
            logs_r.append(math.log(r))
            logs_e.append(math.log(e))
    slope = np.polyfit(np.array(logs_r), np.array(logs_e), 1)[0]
    return float(slope / 2.0)


# ---------------------------------------------------------------------------
# J1 vector helpers.  These run whole frame constructions in first-order jet
# arithmetic so that frame derivatives come out exactly.


def _j1_vector(values: np.ndarray, dx: np.ndarray, dy: np.ndarray) -> list[J1]:
    return [J1(float(values[i]), float(dx[i]), float(dy[i])) for i in range(len(values))]


def _j1_constant(values: Sequence[float]) -> list[J1]:
    return [J1(float(v), 0.0, 0.0) for v in values]


def _j1_inner(a: Sequence[J1], b: Sequence[J1], space: AmbientSpace) -> J1:
    acc = a[0] * b[0]
    if space.index == 1:
        acc = acc * (-1.0)
    for i in range(1, len(a)):
        acc = acc + a[i] * b[i]
    return acc


def _j1_axpy(a: Sequence[J1], coeff: J1, b: Sequence[J1]) -> list[J1]:
    return [ai - coeff * bi for ai, bi in zip(a, b)]


def _j1_scale(a: Sequence[J1], c: J1) -> list[J1]:
    return [c * ai for ai in a]


def _jet_basis(jet: Jet2Point, space: AmbientSpace) -> list[list[J1]]:
    """Tangent-and-position span as J1 vectors with exact derivatives."""
    vecs = []
    if space.quadric is not None:
        vecs.append(_j1_vector(jet.value, jet.d1[0], jet.d1[1]))
    vecs.append(_j1_vector(jet.d1[0], jet.d2[0], jet.d2[1]))
    vecs.append(_j1_vector(jet.d1[1], jet.d2[1], jet.d2[2]))
    return vecs


def _orthonormalize(
    vecs: list[list[J1]], space: AmbientSpace, context: str
) -> list[tuple[list[J1], int]]:
    out: list[tuple[list[J1], int]] = []
    for v in vecs:
        w = list(v)
        for u, eps in out:
            c = _j1_inner(w, u, space) * float(eps)
            w = _j1_axpy(w, c, u)
        nn = _j1_inner(w, w, space)
        if abs(nn.f) < 1e-12:
            raise FrameError(f"{context}: degenerate vector in orthonormalization")
        eps = 1 if nn.f > 0 else -1
        norm = (nn * float(eps)).sqrt()
        w = _j1_scale(w, norm.reciprocal())
        out.append((w, eps))
    return out


def _normal_candidates(
    surface: BranchedSurface, z: complex
) -> tuple[list[tuple[list[J1], int]], int]:
    jet = surface.jet(z)
    sp = surface.ambient
    base = _orthonormalize(_jet_basis(jet, sp), sp, surface.name)
    return base, sp.dimension


def _seed_remainder(
    k: int, base: list[tuple[list[J1], int]], space: AmbientSpace, dim: int
) -> tuple[list[J1], float]:
    seed = _j1_constant([1.0 if i == k else 0.0 for i in range(dim)])
    w = seed
    for u, eps in base:
        c = _j1_inner(w, u, space) * float(eps)
        w = _j1_axpy(w, c, u)
    nn = _j1_inner(w, w, space)
    return w, float(nn.f)


def _select_frame_seeds(surface: BranchedSurface, anchor: complex) -> tuple[int, ...]:
    base, dim = _normal_candidates(surface, anchor)
    sp = surface.ambient
    chosen: list[int] = []
    work = list(base)
    for _ in range(2):
        best_k, best_nn, best_w = -1, 0.0, None
        for k in range(dim):
            if k in chosen:
                continue
            w, nn = _seed_remainder(k, work, sp, dim)
            if abs(nn) > abs(best_nn):
                best_k, best_nn, best_w = k, nn, w
        if best_w is None or abs(best_nn) < 1e-6:
            raise FrameError(
                f"{surface.name}: could not anchor a normal frame at z={anchor}"
            )
        eps = 1 if best_nn > 0 else -1
        norm = (_j1_inner(best_w, best_w, sp) * float(eps)).sqrt()
        work.append((_j1_scale(best_w, norm.reciprocal()), eps))
        chosen.append(best_k)
    return tuple(chosen)


def gram_schmidt_frame(surface: BranchedSurface, z: complex) -> NormalFrame:
    """Deterministic normal frame via Gram-Schmidt in jet arithmetic.

    The seed basis vectors are fixed once per surface (at an anchor point),
    so the resulting frame varies smoothly over the chart and its first
    derivatives, carried by the J1 arithmetic, are exact.
    """
    seeds = surface._ensure_frame_seeds()
    base, dim = _normal_candidates(surface, z)
    sp = surface.ambient
    members: list[tuple[list[J1], int]] = []
    work = list(base)
    for k in seeds:
        w, nn = _seed_remainder(k, work, sp, dim)
        if abs(nn) < 1e-6:
            raise FrameError(
                f"{surface.name}: frame seed {k} degenerates at z={z}; "
                "the chart needs re-anchoring"
            )
        eps = 1 if nn > 0 else -1
        norm = (_j1_inner(w, w, sp) * float(eps)).sqrt()
        unit = _j1_scale(w, norm.reciprocal())
        work.append((unit, eps))
        members.append((unit, eps))
    if sp.index == 1:
        members.sort(key=lambda pair: pair[1])  # timelike (-1) first
        if members[0][1] != -1 or members[1][1] != 1:
            raise FrameError(
                f"{surface.name}: normal plane at z={z} is not of signature (-,+)"
            )
    values = np.array([[c.f for c in vec] for vec, _ in members])
    d1 = np.array([[[c.fx for c in vec], [c.fy for c in vec]] for vec, _ in members])
    signs = (members[0][1], members[1][1])
    return NormalFrame(values=values, d1=d1, signs=signs, seed_indices=seeds)


def normal_frame(surface: BranchedSurface, z: complex) -> NormalFrame:
    if surface.frame_fn is not None:
        return surface.frame_fn(z)
    return gram_schmidt_frame(surface, z)


def frame_gram_residual(
    surface: BranchedSurface, z: complex, frame: Optional[NormalFrame] = None
) -> float:
    """Deviation of (g, gx/sqrt(E), gy/sqrt(E), eta3, eta4) from orthonormal.

    Returns the max-abs difference between the signed Gram matrix of that
    5-tuple (4-tuple in a 4-dimensional ambient, where no frame applies) and
    the expected signature diagonal.
    """
    jet = surface.jet(z)
    sp = surface.ambient
    e, _ = conformal_factor(surface, z)
    if e <= _E_FLOOR:
        raise SingularMetricError(f"conformal factor vanishes at z={z}")
    root = math.sqrt(e)
    vecs = [jet.value, jet.d1[0] / root, jet.d1[1] / root]
    expected = [sp.quadric if sp.quadric is not None else 1, 1, 1]
    if frame is None:
        frame = normal_frame(surface, z)
    vecs.extend([frame.values[0], frame.values[1]])
    expected.extend([frame.signs[0], frame.signs[1]])
    gmat = np.array([[inner(a, b, sp) for b in vecs] for a in vecs])
    return float(np.max(np.abs(gmat - np.diag(np.array(expected, dtype=float)))))


def connection_form_34(
    surface: BranchedSurface, z: complex, frame: Optional[NormalFrame] = None
) -> np.ndarray:
    """Normal connection form <d eta3(.), eta4> on the coordinate frame.

    Returns the pair (omega(d/dx), omega(d/dy)).
    """
    if frame is None:
        frame = normal_frame(surface, z)
    sp = surface.ambient
    return np.array(
        [
            inner(frame.d1[0][0], frame.values[1], sp),
            inner(frame.d1[0][1], frame.values[1], sp),
        ]
    )


def ellipse_axes(
    surface: BranchedSurface, z: complex, frame: Optional[NormalFrame] = None
) -> tuple[float, float]:
    """Semi-axes of the curvature ellipse at z, larger first.

    The ellipse is traced by the second fundamental form over the unit
    tangent circle; its semi-axes are the singular values of the 2x2 matrix
    of trace-free form components in an orthonormal tangent and normal frame.
    A superminimal surface has equal axes (a circle, or a point at zero).
    """
    jet = surface.jet(z)
    sp = surface.ambient
    if frame is None:
        frame = normal_frame(surface, z)
    e, _ = conformal_factor(surface, z)
    if e <= _E_FLOOR:
        raise SingularMetricError(f"conformal factor vanishes at z={z}")
    rows = []
    for member, sign in zip(frame.values, frame.signs):
        a11 = inner(jet.d2[0], member, sp) * sign / e
        a12 = inner(jet.d2[1], member, sp) * sign / e
        a22 = inner(jet.d2[2], member, sp) * sign / e
        rows.append([0.5 * (a11 - a22), a12])
    sv = np.linalg.svd(np.array(rows), compute_uv=False)
    return float(sv[0]), float(sv[1])


# ---------------------------------------------------------------------------
# Generalized cross products in jet arithmetic.


def _det3_j1(rows: list[list[J1]]) -> J1:
    a, b, c = rows[0]
    d, e, f = rows[1]
    g, h, i = rows[2]
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def cross4_j1(a: list[J1], b: list[J1], c: list[J1]) -> list[J1]:
    """Euclidean 4d cross product: the vector dual to det(., a, b, c)."""
    rows = [a, b, c]
    out = []
    for i in range(4):
        minor = [[row[j] for j in range(4) if j != i] for row in rows]
        d = _det3_j1(minor)
        out.append(d if i % 2 == 0 else d * (-1.0))
    return out


def cross3_j1(a: list[J1], b: list[J1]) -> list[J1]:
    return [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]


def surface_normal_s3(surface: BranchedSurface, z: complex) -> tuple[np.ndarray, np.ndarray]:
    """Unit normal within S3 of a surface in S3, with exact derivatives.

    Returns (eta, d_eta) with d_eta of shape (2, 4).  The normal is the
    normalized 4d cross product of (g, gx, gy), so its sign convention is the
    orientation of that ordering.
    """
    if surface.ambient.dimension != 4 or surface.ambient.quadric != 1:
        raise ContractViolation("surface_normal_s3 expects a surface in S3")
    jet = surface.jet(z)
    g = _j1_vector(jet.value, jet.d1[0], jet.d1[1])
    gx = _j1_vector(jet.d1[0], jet.d2[0], jet.d2[1])
    gy = _j1_vector(jet.d1[1], jet.d2[1], jet.d2[2])
    cr = cross4_j1(g, gx, gy)
    nn = cr[0] * cr[0] + cr[1] * cr[1] + cr[2] * cr[2] + cr[3] * cr[3]
    if nn.f <= _E_FLOOR**2:
        raise SingularMetricError(f"normal degenerates at z={z}")
    inv = nn.sqrt().reciprocal()
    unit = [inv * c for c in cr]
    eta = np.array([c.f for c in unit])
    deta = np.array([[c.fx for c in unit], [c.fy for c in unit]])
    return eta, deta


def surface_csv(
    surface: BranchedSurface, path: str, points: Sequence[complex]
) -> None:
    """Write a sample table: chart coordinates, position, E, residuals."""
    n = surface.ambient.dimension
    header = ["x", "y"] + [f"c{i + 1}" for i in range(n)]
    header += ["E", "conformality_residual", "minimality_residual"]
    lines = [",".join(header)]
    for z in points:
        z = complex(z)
        jet = surface.jet(z)
        e, conf = conformal_factor(surface, z)
        mini = minimality_residual(surface, z)
        row = [z.real, z.imag, *jet.value.tolist(), e, conf, mini]
        lines.append(",".join("%.17g" % v for v in row))
    with open(path, "w", encoding="utf-8") as fh:
        fh.write("\n".join(lines) + "\n")
