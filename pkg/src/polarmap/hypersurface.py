"""Curvature analysis of immersed 3-manifolds in 4-dimensional space forms.

The functions here treat a parametrized hypersurface as a black box that
produces positions, first derivatives, and a unit normal.  From that they
recover the shape operator, the principal curvature pattern (lam, 0, -lam),
the structure functions u and v of the adapted frame, the residuals of the
frame's connection table, derivative relations, and bracket relations, the
nullity line field and its ruling geodesics, and a grid scan for the locus
of totally geodesic points.

Conventions: the adapted frame orders the principal directions
(e1, e2, e3) with e2 the direction of the curvature of smallest magnitude
and k(e1) >= k(e3).  The structure functions are

    u = <D_{e3} e1, e2>,    v = <D_{e1} e1, e2>,

with D the induced connection; both are recovered by central differencing
of the sign-aligned frame field.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Optional

import numpy as np

from .config import DEFAULT_TOLS, Tolerances
from .errors import (
    ConditioningError,
    ContractViolation,
    FrameError,
    GeometryError,
    SingularMetricError,
)
from .eig import eigen3_sym
from .spaces import AmbientSpace, gram, inner

__all__ = [
    "HJet",
    "Hypersurface3",
    "HypersurfaceSample",
    "LocusComponent",
    "LocusScan",
    "NullityTrace",
    "StructureResiduals",
    "ambient_geodesic_residual",
    "connection_table",
    "geodesic_locus_scan",
    "immersion_residuals",
    "intrinsic_geodesic_residual",
    "ruled_representation_residual",
    "sample",
    "structure_residuals",
    "trace_nullity_geodesic",
    "xi_variation",
]


@dataclass(frozen=True)
class HJet:
    """Pointwise data of the immersion: position, derivatives, normal.

    ``dxi`` may be None, in which case :func:`sample` recovers the normal
    derivatives by Richardson-extrapolated central differences with sign
    alignment.
    """

    value: np.ndarray
    d1: np.ndarray
    xi: np.ndarray
    dxi: Optional[np.ndarray] = None


class Hypersurface3:
    """A parametrized hypersurface p = (x, y, t) -> Q^4_c.

    ``box`` bounds the parameter domain as three (lo, hi) pairs; it guides
    sampling grids and trace truncation rather than hard-failing nearby
    evaluations, since finite-difference stencils need elbow room.  When
    ``t_periodic`` is set the third coordinate wraps modulo its box length.
    """

    def __init__(
        self,
        name: str,
        ambient: AmbientSpace,
        eval_fn: Callable[[np.ndarray], HJet],
        box: tuple[tuple[float, float], ...],
        t_periodic: bool = False,
        aux: Optional[dict] = None,
    ) -> None:
        if len(box) != 3:
            raise ContractViolation("parameter box must bound 3 coordinates")
        self.name = name
        self.ambient = ambient
        self.eval_fn = eval_fn
        self.box = tuple((float(lo), float(hi)) for lo, hi in box)
        self.t_periodic = bool(t_periodic)
        self.aux = aux or {}

    @property
    def curvature(self) -> float:
        return self.ambient.curvature

    @property
    def t_period(self) -> float:
        lo, hi = self.box[2]
        return hi - lo

    def wrap(self, p: np.ndarray) -> np.ndarray:
        p = np.asarray(p, dtype=float).copy()
        if self.t_periodic:
            lo, _ = self.box[2]
            p[2] = lo + (p[2] - lo) % self.t_period
        return p

    def contains(self, p: np.ndarray) -> bool:
        p = np.asarray(p, dtype=float)
        for a in range(3):
            if a == 2 and self.t_periodic:
                continue
            lo, hi = self.box[a]
            if not (lo <= p[a] <= hi):
                return False
        return True

    def evaluate(self, p: np.ndarray) -> HJet:
        jet = self.eval_fn(self.wrap(p))
        n = self.ambient.dimension
        if jet.value.shape != (n,) or jet.d1.shape != (3, n):
            raise ContractViolation(
                f"{self.name}: evaluation returned wrong shapes at p={p}"
            )
        return jet


@dataclass
class HypersurfaceSample:
    """Shape operator data at one parameter point.

    ``curvatures`` are sorted descending; ``frame_coord`` columns are the
    matching principal directions in parameter coordinates (unit with
    respect to the induced metric) and ``frame_ambient`` their pushforwards
    (unit in the ambient product).  ``nullity_index`` marks the curvature of
    smallest magnitude.  ``shape_asym`` records how far the orthonormal-frame
    shape operator was from symmetric before symmetrization.
    """

    hypersurface: Hypersurface3
    point: np.ndarray
    position: np.ndarray
    xi: np.ndarray
    metric: np.ndarray
    chol: np.ndarray
    shape: np.ndarray
    shape_asym: float
    curvatures: np.ndarray
    frame_coord: np.ndarray
    frame_ambient: np.ndarray
    nullity_index: int
    mean_curvature: float
    total_squared: float
    gauss_kronecker: float
    _conn: Optional[dict] = field(default=None, repr=False)

    @property
    def e2_coord(self) -> np.ndarray:
        return self.frame_coord[:, self.nullity_index]

    @property
    def e2_ambient(self) -> np.ndarray:
        return self.frame_ambient[:, self.nullity_index]

    def connection(
        self,
        tols: Tolerances = DEFAULT_TOLS,
        step: Optional[float] = None,
        richardson: bool = False,
    ) -> dict:
        """Connection-form table w[(i, j)][k] = <D_{e_k} e_i, e_j> (cached)."""
        if self._conn is None:
            w, _, _, _ = _connection_at(
                self.hypersurface, self.point, tols, step, richardson, None
            )
            self._conn = w
        return self._conn

    @property
    def u(self) -> float:
        return float(self.connection()[(0, 1)][2])

    @property
    def v(self) -> float:
        return float(self.connection()[(0, 1)][0])


def _metric_at(h: Hypersurface3, p: np.ndarray) -> np.ndarray:
    jet = h.evaluate(p)
    return gram(jet.d1, h.ambient)


def _fd_normal_derivatives(
    h: Hypersurface3, p: np.ndarray, xi0: np.ndarray, step: float
) -> np.ndarray:
    """Central differences of the unit normal with sign alignment."""

    def diff(hh: float) -> np.ndarray:
        rows = []
        for a in range(3):
            offset = np.zeros(3)
            offset[a] = hh
            xp = h.evaluate(p + offset).xi
            xm = h.evaluate(p - offset).xi
            if inner(xp, xi0, h.ambient) * _normal_square(h) < 0:
                xp = -xp
            if inner(xm, xi0, h.ambient) * _normal_square(h) < 0:
                xm = -xm
            rows.append((xp - xm) / (2.0 * hh))
        return np.stack(rows)

    d_h = diff(step)
    d_h2 = diff(step / 2.0)
    return (4.0 * d_h2 - d_h) / 3.0


def _normal_square(h: Hypersurface3) -> float:
    # The hypersurface normal is spacelike in every target used here.
    return 1.0


def sample(
    h: Hypersurface3, p: np.ndarray, tols: Tolerances = DEFAULT_TOLS
) -> HypersurfaceSample:
    """Assemble the shape operator and principal data at p.

    The operator is solved from the normal derivatives in the coordinate
    frame, transported to an orthonormal frame through the Cholesky factor
    of the induced metric, symmetrized, and eigendecomposed.
    """
    p = np.asarray(p, dtype=float)
    jet = h.evaluate(p)
    sp = h.ambient
    m = gram(jet.d1, sp)
    m = 0.5 * (m + m.T)
    if not np.all(np.isfinite(m)):
        raise SingularMetricError(f"{h.name}: metric not finite at p={p}")
    if np.linalg.cond(m) > tols.metric_cond_max:
        raise ConditioningError(
            f"{h.name}: induced metric condition number exceeds "
            f"{tols.metric_cond_max:g} at p={p}"
        )
    try:
        chol = np.linalg.cholesky(m)
    except np.linalg.LinAlgError as exc:
        raise SingularMetricError(
            f"{h.name}: induced metric not positive definite at p={p}"
        ) from exc
    dxi = jet.dxi
    if dxi is None:
        dxi = _fd_normal_derivatives(h, p, jet.xi, tols.fd_step_jet)
    c = np.array(
        [[inner(dxi[i], jet.d1[j], sp) for j in range(3)] for i in range(3)]
    )
    tmp = np.linalg.solve(chol, c.T)
    shat = -np.linalg.solve(chol, tmp.T).T
    asym = float(np.max(np.abs(shat - shat.T)))
    shat = 0.5 * (shat + shat.T)
    curv, vhat = eigen3_sym(shat)
    frame_coord = np.linalg.solve(chol.T, vhat)
    frame_ambient = jet.d1.T @ frame_coord
    i2 = int(np.argmin(np.abs(curv)))
    return HypersurfaceSample(
        hypersurface=h,
        point=p,
        position=jet.value,
        xi=jet.xi,
        metric=m,
        chol=chol,
        shape=shat,
        shape_asym=asym,
        curvatures=curv,
        frame_coord=frame_coord,
        frame_ambient=frame_ambient,
        nullity_index=i2,
        mean_curvature=float(np.mean(curv)),
        total_squared=float(np.sum(curv * curv)),
        gauss_kronecker=float(np.prod(curv)),
    )


def immersion_residuals(
    h: Hypersurface3, p: np.ndarray, tols: Tolerances = DEFAULT_TOLS
) -> dict[str, float]:
    """Unit-normal, tangency, and quadric residuals of the evaluation."""
    jet = h.evaluate(np.asarray(p, dtype=float))
    sp = h.ambient
    out = {
        "xi_unit": abs(inner(jet.xi, jet.xi, sp) - 1.0),
        "xi_tangency": max(
            abs(inner(jet.xi, jet.d1[a], sp)) for a in range(3)
        ),
    }
    if sp.quadric is None:
        out["quadric"] = 0.0
    else:
        out["quadric"] = abs(inner(jet.value, jet.value, sp) - sp.quadric)
    return out


# ---------------------------------------------------------------------------
# Adapted frame and connection table.


def _structure_frame(
    s: HypersurfaceSample, tols: Tolerances
) -> tuple[float, np.ndarray, np.ndarray]:
    """Permute the principal frame into adapted order (e1, e2, e3).

    e2 carries the curvature of smallest magnitude; the remaining two are
    sorted by curvature descending, so lam = k(e1) is the positive extreme
    for the (lam, 0, -lam) pattern.
    """
    k = s.curvatures
    if s.total_squared < tols.s_min:
        raise ConditioningError(
            f"{s.hypersurface.name}: totally geodesic point at p={s.point}; "
            "adapted frame undefined"
        )
    i2 = int(np.argmin(np.abs(k)))
    rest = sorted((i for i in range(3) if i != i2), key=lambda i: -k[i])
    order = (rest[0], i2, rest[1])
    lam = float(k[order[0]])
    gap = min(k[order[0]] - k[order[1]], k[order[1]] - k[order[2]])
    if lam <= 0 or gap < tols.eig_gap * max(1.0, abs(lam)):
        raise ConditioningError(
            f"{s.hypersurface.name}: principal curvatures {k} too clustered "
            f"for a stable adapted frame at p={s.point}"
        )
    return lam, s.frame_coord[:, order], s.frame_ambient[:, order]


def _frame_at(
    h: Hypersurface3,
    q: np.ndarray,
    tols: Tolerances,
    ref_amb: Optional[np.ndarray],
) -> tuple[float, np.ndarray, np.ndarray]:
    """Adapted frame at q, sign-aligned column by column with ref_amb."""
    s = sample(h, q, tols)
    lam, coord, amb = _structure_frame(s, tols)
    if ref_amb is not None:
        coord = coord.copy()
        amb = amb.copy()
        for i in range(3):
            cos = inner(amb[:, i], ref_amb[:, i], h.ambient)
            if abs(cos) < tols.frame_align_cos:
                raise FrameError(
                    f"{h.name}: adapted frame rotated too far between stencil "
                    f"points near p={q}; shrink the step"
                )
            if cos < 0:
                coord[:, i] = -coord[:, i]
                amb[:, i] = -amb[:, i]
    return lam, coord, amb


def _connection_at(
    h: Hypersurface3,
    q: np.ndarray,
    tols: Tolerances,
    step: Optional[float],
    richardson: bool,
    ref_amb: Optional[np.ndarray],
) -> tuple[dict, float, np.ndarray, np.ndarray]:
    """Connection table at q plus the frame it was computed in."""
    lam, coord, amb = _frame_at(h, q, tols, ref_amb)
    hstep = tols.fd_step_frame if step is None else float(step)

    def diffs(hh: float) -> list[np.ndarray]:
        out = []
        for k in range(3):
            d = coord[:, k]
            _, _, ap = _frame_at(h, q + hh * d, tols, amb)
            _, _, am = _frame_at(h, q - hh * d, tols, amb)
            out.append((ap - am) / (2.0 * hh))
        return out

    deriv = diffs(hstep)
    if richardson:
        finer = diffs(hstep / 2.0)
        deriv = [(4.0 * f - c) / 3.0 for c, f in zip(deriv, finer)]
    w = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        w[(i, j)] = np.array(
            [inner(deriv[k][:, i], amb[:, j], h.ambient) for k in range(3)]
        )
    return w, lam, coord, amb


def connection_table(
    h: Hypersurface3,
    p: np.ndarray,
    tols: Tolerances = DEFAULT_TOLS,
    step: Optional[float] = None,
    richardson: bool = False,
) -> dict:
    """Public wrapper: w[(i, j)][k] = <D_{e_k} e_i, e_j> at p."""
    w, _, _, _ = _connection_at(
        h, np.asarray(p, dtype=float), tols, step, richardson, None
    )
    return w


# ---------------------------------------------------------------------------
# Structure-equation residuals.


@dataclass(frozen=True)
class StructureResiduals:
    """Residuals of the adapted-frame structure relations at one point.

    ``connection`` holds the nine connection-table identities,
    ``derivatives`` the four first-order relations among u and v,
    ``brackets`` the three commutator relations (norms in the induced
    metric), and ``lap_u``/``lap_v`` the intrinsic Laplacians that vanish
    when u and v are harmonic.
    """

    u: float
    v: float
    lam: float
    connection: dict[str, float]
    derivatives: dict[str, float]
    brackets: dict[str, float]
    lap_u: float
    lap_v: float
    meta: dict

    @property
    def max_connection(self) -> float:
        return max(abs(x) for x in self.connection.values())

    @property
    def max_derivatives(self) -> float:
        return max(abs(x) for x in self.derivatives.values())

    @property
    def max_brackets(self) -> float:
        return max(abs(x) for x in self.brackets.values())


def _uvl_at(
    h: Hypersurface3,
    q: np.ndarray,
    tols: Tolerances,
    step: Optional[float],
    richardson: bool,
    ref_amb: np.ndarray,
) -> tuple[float, float, float, np.ndarray]:
    """(u, v, log lam, frame coords) at a satellite point."""
    w, lam, coord, _ = _connection_at(h, q, tols, step, richardson, ref_amb)
    return float(w[(0, 1)][2]), float(w[(0, 1)][0]), math.log(lam), coord


def _christoffel_contraction(
    h: Hypersurface3, p: np.ndarray, m0: np.ndarray, step: float
) -> np.ndarray:
    """C^c = g^{ab} Gamma^c_{ab} from central differences of the metric."""
    dm = []
    for a in range(3):
        offset = np.zeros(3)
        offset[a] = step
        dm.append((_metric_at(h, p + offset) - _metric_at(h, p - offset)) / (2 * step))
    minv = np.linalg.inv(m0)
    contraction = np.zeros(3)
    for c_idx in range(3):
        total = 0.0
        for a in range(3):
            for b in range(3):
                gamma = 0.0
                for d in range(3):
                    gamma += minv[c_idx, d] * (
                        dm[a][d, b] + dm[b][d, a] - dm[d][a, b]
                    )
                total += minv[a, b] * 0.5 * gamma
        contraction[c_idx] = total
    return contraction


def structure_residuals(
    h: Hypersurface3,
    p: np.ndarray,
    tols: Tolerances = DEFAULT_TOLS,
    step: Optional[float] = None,
    richardson: bool = False,
) -> StructureResiduals:
    """Evaluate every structure relation of the adapted frame at p.

    ``step`` drives all first-order differencing (the connection table and
    the satellite derivatives of u, v, log lam); the Laplacian stencil uses
    its own fixed step from the tolerance table, with a five-point second
    difference along straight coordinate lines corrected by the Christoffel
    contraction so that it measures the intrinsic Laplacian.
    """
    p = np.asarray(p, dtype=float)
    hstep = tols.structure_fd if step is None else float(step)
    c = h.curvature

    w0, lam0, coord0, amb0 = _connection_at(h, p, tols, hstep, richardson, None)
    u0 = float(w0[(0, 1)][2])
    v0 = float(w0[(0, 1)][0])
    m0 = _metric_at(h, p)

    # Satellites straddling p along each frame direction.
    sat: dict[tuple[int, int], tuple[float, float, float, np.ndarray]] = {}
    for k in range(3):
        d = coord0[:, k]
        for sgn in (1, -1):
            sat[(k, sgn)] = _uvl_at(
                h, p + sgn * hstep * d, tols, hstep, richardson, amb0
            )
    e_u = np.array([(sat[(k, 1)][0] - sat[(k, -1)][0]) / (2 * hstep) for k in range(3)])
    e_v = np.array([(sat[(k, 1)][1] - sat[(k, -1)][1]) / (2 * hstep) for k in range(3)])
    e_l = np.array([(sat[(k, 1)][2] - sat[(k, -1)][2]) / (2 * hstep) for k in range(3)])

    connection = {
        "omega12(e1)-v": float(w0[(0, 1)][0] - v0),
        "omega13(e1)-e3(loglam)/2": float(w0[(0, 2)][0] - 0.5 * e_l[2]),
        "omega23(e1)-u": float(w0[(1, 2)][0] - u0),
        "omega12(e2)": float(w0[(0, 1)][1]),
        "omega13(e2)-u/2": float(w0[(0, 2)][1] - 0.5 * u0),
        "omega23(e2)": float(w0[(1, 2)][1]),
        "omega12(e3)-u": float(w0[(0, 1)][2] - u0),
        "omega13(e3)+e1(loglam)/2": float(w0[(0, 2)][2] + 0.5 * e_l[0]),
        "omega23(e3)+v": float(w0[(1, 2)][2] + v0),
    }
    derivatives = {
        "e2(v)-(v^2-u^2+c)": float(e_v[1] - (v0 * v0 - u0 * u0 + c)),
        "e1(u)-e3(v)": float(e_u[0] - e_v[2]),
        "e2(u)-2uv": float(e_u[1] - 2.0 * u0 * v0),
        "e3(u)+e1(v)": float(e_u[2] + e_v[0]),
    }

    # Commutators of the frame fields, evaluated as coordinate vector
    # fields: [e_i, e_j] = D_i Y_j - D_j Y_i with Y_k the sign-aligned
    # frame columns at the satellites.
    dy = [
        (sat[(k, 1)][3] - sat[(k, -1)][3]) / (2 * hstep) for k in range(3)
    ]

    def bracket(i: int, j: int) -> np.ndarray:
        return dy[i][:, j] - dy[j][:, i]

    expected = {
        (0, 1): -v0 * coord0[:, 0] + 0.5 * u0 * coord0[:, 2],
        (1, 2): 0.5 * u0 * coord0[:, 0] + v0 * coord0[:, 2],
        (0, 2): -0.5 * e_l[2] * coord0[:, 0]
        - 2.0 * u0 * coord0[:, 1]
        + 0.5 * e_l[0] * coord0[:, 2],
    }
    brackets = {}
    for key, label in (((0, 1), "[e1,e2]"), ((1, 2), "[e2,e3]"), ((0, 2), "[e1,e3]")):
        r = bracket(*key) - expected[key]
        brackets[label] = float(math.sqrt(max(0.0, float(r @ m0 @ r))))

    # Intrinsic Laplacians of u and v: straight-line second differences
    # summed over the frame directions minus the Christoffel correction.
    hl = tols.fd_step_laplace
    second_u = 0.0
    second_v = 0.0
    for k in range(3):
        d = coord0[:, k]
        vals = {}
        for mstep in (-2, -1, 1, 2):
            vals[mstep] = _uvl_at(
                h, p + mstep * hl * d, tols, hstep, richardson, amb0
            )
        second_u += (
            -vals[2][0] + 16 * vals[1][0] - 30 * u0 + 16 * vals[-1][0] - vals[-2][0]
        ) / (12 * hl * hl)
        second_v += (
            -vals[2][1] + 16 * vals[1][1] - 30 * v0 + 16 * vals[-1][1] - vals[-2][1]
        ) / (12 * hl * hl)
    contraction = _christoffel_contraction(h, p, m0, hl)
    grad_u = np.linalg.solve(coord0.T, e_u)
    grad_v = np.linalg.solve(coord0.T, e_v)
    lap_u = second_u - float(contraction @ grad_u)
    lap_v = second_v - float(contraction @ grad_v)

    return StructureResiduals(
        u=u0,
        v=v0,
        lam=lam0,
        connection=connection,
        derivatives=derivatives,
        brackets=brackets,
        lap_u=float(lap_u),
        lap_v=float(lap_v),
        meta={
            "point": tuple(float(x) for x in p),
            "step": hstep,
            "laplace_step": hl,
            "richardson": richardson,
            "curvature": c,
        },
    )


# ---------------------------------------------------------------------------
# Nullity line field and its geodesics.


@dataclass(frozen=True)
class NullityTrace:
    """A curve integrated along the unit nullity direction e2.

    ``points`` are parameter coordinates, ``positions`` ambient positions,
    ``normals`` the hypersurface normal along the curve.  ``tangent0`` is
    the ambient unit tangent at the start, the datum for the closed ruled
    representation.  ``truncated`` flags an exit through the parameter box.
    """

    s: np.ndarray
    points: np.ndarray
    positions: np.ndarray
    normals: np.ndarray
    tangent0: np.ndarray
    truncated: bool
    step: float

    @property
    def length(self) -> float:
        return float(self.s[-1] - self.s[0])


def trace_nullity_geodesic(
    h: Hypersurface3,
    p0: np.ndarray,
    length: float,
    tols: Tolerances = DEFAULT_TOLS,
    step: Optional[float] = None,
) -> NullityTrace:
    """Integrate the unit e2 field with a classical 4th-order scheme.

    The direction field is defined up to sign, so every stage evaluation is
    aligned with the previous one by the ambient inner product.  Leaving the
    parameter box stops the trace and flags it truncated.
    """
    hstep = tols.ruling_rk_step if step is None else float(step)
    n_steps = max(1, int(round(float(length) / hstep)))
    q = h.wrap(np.asarray(p0, dtype=float))

    def direction(point: np.ndarray, ref: Optional[np.ndarray]):
        s = sample(h, point, tols)
        i2 = s.nullity_index
        d = s.frame_coord[:, i2]
        a = s.frame_ambient[:, i2]
        if ref is not None:
            cos = inner(a, ref, h.ambient)
            if abs(cos) < tols.frame_align_cos:
                raise FrameError(
                    f"{h.name}: nullity direction rotated too far within one "
                    f"integrator step near p={point}; shrink the step"
                )
            if cos < 0:
                d, a = -d, -a
        return d, a, s

    svals = [0.0]
    coords = [q.copy()]
    d0, a0, s0 = direction(q, None)
    positions = [s0.position]
    normals = [s0.xi]
    tangent0 = a0
    prev = a0
    truncated = False
    for k in range(n_steps):
        d1, a1, _ = direction(q, prev) if k else (d0, a0, s0)
        d2, a2, _ = direction(h.wrap(q + 0.5 * hstep * d1), a1)
        d3, a3, _ = direction(h.wrap(q + 0.5 * hstep * d2), a2)
        d4, a4, _ = direction(h.wrap(q + hstep * d3), a3)
        q_next = q + hstep * (d1 + 2.0 * d2 + 2.0 * d3 + d4) / 6.0
        if not h.contains(q_next):
            truncated = True
            break
        q = h.wrap(q_next)
        prev = a1
        _, _, s_here = direction(q, prev)
        svals.append((k + 1) * hstep)
        coords.append(q.copy())
        positions.append(s_here.position)
        normals.append(s_here.xi)
    return NullityTrace(
        s=np.array(svals),
        points=np.array(coords),
        positions=np.array(positions),
        normals=np.array(normals),
        tangent0=tangent0,
        truncated=truncated,
        step=hstep,
    )


def ruled_representation_residual(trace: NullityTrace, curvature: float) -> float:
    """Worst deviation from the closed ruled form along the trace.

    The leaf through f0 with unit tangent T0 is a complete geodesic of the
    ambient space form, so the positions must follow cos/sin (curvature 1),
    affine (0), or cosh/sinh (-1) combinations of f0 and T0.
    """
    f0 = trace.positions[0]
    t0 = trace.tangent0
    worst = 0.0
    for s_val, pos in zip(trace.s, trace.positions):
        if curvature > 0:
            pred = math.cos(s_val) * f0 + math.sin(s_val) * t0
        elif curvature < 0:
            pred = math.cosh(s_val) * f0 + math.sinh(s_val) * t0
        else:
            pred = f0 + s_val * t0
        worst = max(worst, float(np.linalg.norm(pos - pred)))
    return worst


def ambient_geodesic_residual(trace: NullityTrace, curvature: float) -> float:
    """max over interior nodes of |f'' + c f| by second differences."""
    if len(trace.s) < 3:
        return 0.0
    ds = trace.step
    worst = 0.0
    f = trace.positions
    for k in range(1, len(f) - 1):
        acc = (f[k + 1] - 2.0 * f[k] + f[k - 1]) / (ds * ds)
        worst = max(worst, float(np.linalg.norm(acc + curvature * f[k])))
    return worst


def intrinsic_geodesic_residual(
    h: Hypersurface3, trace: NullityTrace, tols: Tolerances = DEFAULT_TOLS
) -> float:
    """Tangential part of the acceleration: vanishes for a geodesic."""
    if len(trace.s) < 3:
        return 0.0
    ds = trace.step
    worst = 0.0
    f = trace.positions
    for k in range(1, len(f) - 1):
        acc = (f[k + 1] - 2.0 * f[k] + f[k - 1]) / (ds * ds)
        s = sample(h, trace.points[k], tols)
        tangential = math.sqrt(
            sum(
                inner(acc, s.frame_ambient[:, i], h.ambient) ** 2
                for i in range(3)
            )
        )
        worst = max(worst, tangential)
    return worst


def xi_variation(trace: NullityTrace) -> float:
    """max |xi(s) - xi(0)|: the normal is constant along nullity leaves."""
    return float(np.max(np.linalg.norm(trace.normals - trace.normals[0], axis=1)))


# ---------------------------------------------------------------------------
# Locus of totally geodesic points.


@dataclass(frozen=True)
class LocusComponent:
    """One connected component of the low-curvature locus on the grid."""

    indices: tuple[tuple[int, int, int], ...]
    points: np.ndarray
    singular_values: np.ndarray
    dim_estimate: int

    @property
    def size(self) -> int:
        return len(self.indices)

    @property
    def status(self) -> str:
        return "consistent" if self.dim_estimate == 1 else "anomalous"


@dataclass(frozen=True)
class LocusScan:
    """Grid scan for points with small total squared curvature.

    ``verdict`` summarizes: "empty" when nothing was flagged (or only
    components too small to judge), "consistent" when every component of at
    least ``locus_min_points`` grid nodes is one-dimensional by the PCA
    estimate, "anomalous" otherwise.  This is a diagnostic; discretization
    can blur the estimate.
    """

    grid: tuple[int, int, int]
    eps: float
    flagged_count: int
    evaluated_count: int
    components: tuple[LocusComponent, ...]
    verdict: str


def geodesic_locus_scan(
    h: Hypersurface3,
    grid: tuple[int, int, int] = (16, 16, 16),
    eps: Optional[float] = None,
    tols: Tolerances = DEFAULT_TOLS,
) -> LocusScan:
    """Flag grid cells with S < eps and group them into components.

    Cell centers avoid box edges and exact symmetry axes.  Evaluation
    failures (singular metric, conditioning) leave cells unflagged: those
    are singular points of the parametrization, not geodesic points.
    Components are connected through face neighbors, with wraparound along
    a periodic third axis, and each is summarized by the singular values of
    its centered coordinate cloud.
    """
    if eps is None:
        eps = tols.locus_s_eps
    nx, ny, nt = grid
    axes = []
    for a, n in zip(range(3), grid):
        lo, hi = h.box[a]
        width = (hi - lo) / n
        axes.append(lo + width * (np.arange(n) + 0.5))
    flagged = np.zeros(grid, dtype=bool)
    evaluated = 0
    for idx in product(range(nx), range(ny), range(nt)):
        p = np.array([axes[0][idx[0]], axes[1][idx[1]], axes[2][idx[2]]])
        try:
            s = sample(h, p, tols)
        except GeometryError:
            continue
        evaluated += 1
        if s.total_squared < eps:
            flagged[idx] = True

    seen = np.zeros(grid, dtype=bool)
    components = []
    for start in product(range(nx), range(ny), range(nt)):
        if not flagged[start] or seen[start]:
            continue
        queue = [start]
        seen[start] = True
        member_idx = []
        while queue:
            cur = queue.pop()
            member_idx.append(cur)
            for axis in range(3):
                for delta in (-1, 1):
                    nxt = list(cur)
                    nxt[axis] += delta
                    if axis == 2 and h.t_periodic:
                        nxt[axis] %= nt
                    if not (0 <= nxt[axis] < grid[axis]):
                        continue
                    nxt = tuple(nxt)
                    if flagged[nxt] and not seen[nxt]:
                        seen[nxt] = True
                        queue.append(nxt)
        pts = np.array(
            [
                [axes[0][i], axes[1][j], axes[2][k]]
                for (i, j, k) in sorted(member_idx)
            ]
        )
        centered = pts - pts.mean(axis=0)
        sv = np.linalg.svd(centered, compute_uv=False)
        sv = np.pad(sv, (0, max(0, 3 - len(sv))))
        if sv[0] <= 0:
            dim = 0
        else:
            dim = int(np.sum(sv >= sv[0] / tols.locus_svd_ratio))
        components.append(
            LocusComponent(
                indices=tuple(sorted(member_idx)),
                points=pts,
                singular_values=sv[:3],
                dim_estimate=dim,
            )
        )

    components.sort(key=lambda comp: (-comp.size, comp.indices))
    reliable = [comp for comp in components if comp.size >= tols.locus_min_points]
    flagged_count = int(flagged.sum())
    if not reliable:
        verdict = "empty"
    elif all(comp.dim_estimate == 1 for comp in reliable):
        verdict = "consistent"
    else:
        verdict = "anomalous"
    return LocusScan(
        grid=tuple(int(n) for n in grid),
        eps=float(eps),
        flagged_count=flagged_count,
        evaluated_count=evaluated,
        components=tuple(components),
        verdict=verdict,
    )
