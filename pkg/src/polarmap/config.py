"""Central numeric configuration.

Every tolerance and step size used anywhere in the package lives here, so
call sites never carry their own magic numbers.  Tests and the CLI construct
modified copies via ``dataclasses.replace``.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class Tolerances:
    # Generic residual levels: quantities computed from closed-form jets are
    # held to exact_jet, quantities that pass through finite differences to fd.
    exact_jet: float = 1e-8
    fd: float = 1e-4

    # Finite-difference step sizes.
    fd_step_jet: float = 1e-5        # value-only surface fallback (with one Richardson level)
    fd_step_frame: float = 1e-4      # frame fields on hypersurfaces
    fd_step_laplace: float = 1e-3    # frame Laplacian of the structure functions

    # Surface-level checks.
    conformality: float = 1e-8
    surface_minimality: float = 1e-6
    quadric: float = 1e-10
    frame_gram: float = 1e-8
    frame_align_cos: float = 0.2     # minimum |cos| between frames at neighboring stencil points
    degenerate_factor: float = 1e-14  # E below this is treated as identically degenerate

    # Branch-point analysis.
    branch_order: float = 0.05
    branch_radius_lo: float = 1e-3
    branch_radius_hi: float = 1e-1
    branch_n_radii: int = 12
    branch_n_rays: int = 8
    branch_ray_spread: float = 0.10

    # Polar-map regularity.
    singular_det_band: float = 1e-9   # |det| <= band * max(1, frame scale)^2 counts as singular
    regular_limit_floor: float = 1e-9

    # Euclidean support function: |Laplacian(gamma) + 2 gamma| on probe points.
    support_helmholtz: float = 1e-6

    # Two-path metric agreement.
    metric_rel: float = 1e-6

    # Curvature pattern at regular points.
    mean_curv: float = 1e-5
    middle_curv: float = 1e-6
    sum_extreme_curv: float = 1e-5
    gk_curv: float = 1e-12

    # Hypersurface frame extraction guards.
    s_min: float = 1e-6
    eig_gap: float = 1e-4
    metric_cond_max: float = 1e8

    # Structure-equation residual levels.
    structure_fd: float = 1e-3
    structure_exact: float = 1e-8     # product-cylinder case, no genuine FD noise
    laplace_uv: float = 5e-3

    # Nullity ruling.
    ruling_xi_var_rel: float = 1e-6
    ruling_formula: float = 1e-6
    ruling_ambient_geodesic: float = 1e-5
    ruling_rk_step: float = 5e-3

    # Geodesic locus scan.
    locus_svd_ratio: float = 10.0
    locus_min_points: int = 4
    locus_s_eps: float = 0.02         # default flag threshold on S = sum of k_i^2

    # Closed-form comparisons for the sphere example over the Clifford datum.
    clifford_det_rel: float = 1e-6
    clifford_k1: float = 1e-5

    # Stereographic projection guard.
    stereo_pole_mask: float = 1e-3

    # Sampling guard: reject "regular" random points whose operator determinant
    # is below this floor (keeps eigenvalue noise inside the pattern tolerances).
    sampling_det_floor: float = 0.05


DEFAULT_TOLS = Tolerances()

DEFAULT_SEED = 20270314
