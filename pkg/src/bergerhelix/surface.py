"""The torus geodesic, the mapped surface F(u, v) = A(v) beta(u), and its
pointwise differential data (partials, normal components, measured angle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np

from .ambient import J1, J2, J3, BergerParams, frame_components
from .constants import HelixConstants, compute_constants
from .errors import BadOrder, DegenerateTangentPlane, OutOfDomain
from .family import XiProfile, assemble, assemble_derivative

GRAM_DET_TOL = 1e-12
FD_STEP_V = 1e-5


def beta(u, consts: HelixConstants) -> np.ndarray:
    """The torus geodesic (sqrt(g11) e^{i alpha1 u}, sqrt(g33) e^{i alpha2 u}).

    Accepts scalar or array u; output shape is u.shape + (4,).  Lies on
    the unit sphere because g11 + g33 = 1.
    """
    return beta_derivatives(u, consts, order=0)


def beta_derivatives(u, consts: HelixConstants, order: int = 1) -> np.ndarray:
    """Exact u-derivative of order up to four: each derivative scales by
    the frequency and permutes (cos, sin) -> (-sin, cos) without phase
    arithmetic, so exact zeros stay exact."""
    if order not in (0, 1, 2, 3, 4):
        raise BadOrder(f"derivative order must be in 0..4, got {order}")
    u = np.asarray(u, dtype=float)
    a1, a2 = consts.alpha1, consts.alpha2
    r1, r3 = math.sqrt(consts.g11), math.sqrt(consts.g33)
    c1, s1 = np.cos(a1 * u), np.sin(a1 * u)
    c2, s2 = np.cos(a2 * u), np.sin(a2 * u)
    k = order % 4
    if k == 0:
        pair1, pair2 = (c1, s1), (c2, s2)
    elif k == 1:
        pair1, pair2 = (-s1, c1), (-s2, c2)
    elif k == 2:
        pair1, pair2 = (-c1, -s1), (-c2, -s2)
    else:
        pair1, pair2 = (s1, -c1), (s2, -c2)
    w1, w2 = r1 * a1 ** order, r3 * a2 ** order
    return np.stack([w1 * pair1[0], w1 * pair1[1],
                     w2 * pair2[0], w2 * pair2[1]], axis=-1)


@dataclass(frozen=True)
class HelixSurface:
    """A concrete parametrized surface: parameters, constants, family.

    fv_method selects how F_v is produced: "analytic" applies dA/dv,
    "fd" differentiates F in v by central differences with one level of
    Richardson extrapolation (step FD_STEP_V).
    """

    params: BergerParams
    consts: HelixConstants
    profile: XiProfile
    u_domain: Tuple[float, float]
    v_domain: Tuple[float, float]
    fv_method: str = "analytic"

    def __post_init__(self):
        if self.fv_method not in ("analytic", "fd"):
            raise OutOfDomain(f"fv_method must be 'analytic' or 'fd', got {self.fv_method}")

    def check_domain(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        if np.any(u < self.u_domain[0] - 1e-12) or np.any(u > self.u_domain[1] + 1e-12):
            raise OutOfDomain(f"u outside {self.u_domain}")
        if np.any(v < self.v_domain[0] - 1e-12) or np.any(v > self.v_domain[1] + 1e-12):
            raise OutOfDomain(f"v outside {self.v_domain}")
        return u, v


def make_surface(params: BergerParams, profile: XiProfile,
                 consts: Optional[HelixConstants] = None,
                 u_domain: Optional[Tuple[float, float]] = None,
                 v_domain: Optional[Tuple[float, float]] = None,
                 fv_method: Optional[str] = None) -> HelixSurface:
    """Assemble a surface with the default domains.

    The u-domain covers one full period of the slow circle phase,
    [0, 2 pi / alpha2]; the v-domain is the profile's.  fv_method
    defaults to "analytic" when the profile advertises exact
    derivatives, "fd" otherwise.
    """
    if consts is None:
        consts = compute_constants(params)
    if u_domain is None:
        u_domain = (0.0, 2.0 * math.pi / consts.alpha2)
    if v_domain is None:
        v_domain = (profile.v_min, profile.v_max)
    if fv_method is None:
        fv_method = "analytic" if profile.exact_derivatives else "fd"
    return HelixSurface(params=params, consts=consts, profile=profile,
                        u_domain=u_domain, v_domain=v_domain, fv_method=fv_method)


def position(surface: HelixSurface, u, v) -> np.ndarray:
    """F(u, v) = A(v) beta(u); batched over matching u, v shapes."""
    u, v = surface.check_domain(u, v)
    A = assemble(surface.profile, v)
    b = beta(u, surface.consts)
    return np.einsum('...ij,...j->...i', A, b)


def _fv_analytic(surface: HelixSurface, u, v) -> np.ndarray:
    Ap = assemble_derivative(surface.profile, v)
    b = beta(u, surface.consts)
    return np.einsum('...ij,...j->...i', Ap, b)


def _fv_fd(surface: HelixSurface, u, v) -> np.ndarray:
    # Central difference with one Richardson level: (4 D(h/2) - D(h)) / 3.
    h = FD_STEP_V
    lo, hi = surface.profile.v_min, surface.profile.v_max
    v = np.asarray(v, dtype=float)
    if np.any(v - h < lo - 1e-15) or np.any(v + h > hi + 1e-15):
        raise OutOfDomain(
            f"finite-difference F_v needs [v-{h}, v+{h}] inside [{lo}, {hi}]")
    b = beta(u, surface.consts)

    def diff(step):
        Ap = assemble(surface.profile, v + step) - assemble(surface.profile, v - step)
        return np.einsum('...ij,...j->...i', Ap, b) / (2.0 * step)

    return (4.0 * diff(h / 2) - diff(h)) / 3.0


def partials(surface: HelixSurface, u, v):
    """(F_u, F_v) at (u, v); both tangent to the sphere at F(u, v)."""
    u, v = surface.check_domain(u, v)
    A = assemble(surface.profile, v)
    fu = np.einsum('...ij,...j->...i', A, beta_derivatives(u, surface.consts, 1))
    if surface.fv_method == "analytic":
        fv = _fv_analytic(surface, u, v)
    else:
        fv = _fv_fd(surface, u, v)
    return fu, fv


def normal_components(surface: HelixSurface, u, v):
    """Frame components (N1, N2, N3) of the (unnormalized) normal.

    The cross product of the frame components of F_u and F_v is
    g-orthogonal to both.  Raises DegenerateTangentPlane when the
    euclidean Gram determinant of (F_u, F_v) falls below GRAM_DET_TOL.
    """
    F = position(surface, u, v)
    fu, fv = partials(surface, u, v)
    gram = float(fu @ fu) * float(fv @ fv) - float(fu @ fv) ** 2
    if gram < GRAM_DET_TOL:
        raise DegenerateTangentPlane(
            f"Gram determinant {gram:.3e} below {GRAM_DET_TOL} at (u={u}, v={v})")
    cu = frame_components(surface.params, F, fu)
    cv = frame_components(surface.params, F, fv)
    n1, n2, n3 = np.cross(cu, cv)
    return float(n1), float(n2), float(n3)


def measured_angle(surface: HelixSurface, u, v) -> float:
    """arccos(|N1| / |N|) in [0, pi/2]: the angle the unit normal makes
    with the fiber direction E1."""
    n1, n2, n3 = normal_components(surface, u, v)
    norm = math.sqrt(n1 * n1 + n2 * n2 + n3 * n3)
    return math.acos(min(1.0, abs(n1) / norm))


@dataclass
class SurfaceGrid:
    """Uniform samples of a surface with per-sample differential data.

    Arrays are indexed [i, j] for (us[i], vs[j]).  Samples where the
    tangent plane degenerates (or where the finite-difference F_v
    cannot be formed) are listed in defects and carry NaN normals and
    angles; positions and F_u are always valid.
    """

    us: np.ndarray
    vs: np.ndarray
    positions: np.ndarray          # (nu, nv, 4)
    fu: np.ndarray                 # (nu, nv, 4)
    fv: np.ndarray                 # (nu, nv, 4)
    normals: np.ndarray            # (nu, nv, 3) frame components
    angles: np.ndarray             # (nu, nv)
    fv_method: str
    defects: List[Tuple[int, int, str]] = field(default_factory=list)

    @property
    def shape(self):
        return self.positions.shape[:2]

    def defect_mask(self) -> np.ndarray:
        mask = np.zeros(self.shape, dtype=bool)
        for i, j, _ in self.defects:
            mask[i, j] = True
        return mask


def sample_grid(surface: HelixSurface, nu: int, nv: int) -> SurfaceGrid:
    """Evaluate the surface on a uniform nu x nv grid.

    Fully vectorized; degenerate samples are recorded, not fatal.
    """
    if nu < 2 or nv < 2:
        raise OutOfDomain(f"grid needs nu, nv >= 2, got ({nu}, {nv})")
    us = np.linspace(surface.u_domain[0], surface.u_domain[1], nu)
    vs = np.linspace(surface.v_domain[0], surface.v_domain[1], nv)

    A = assemble(surface.profile, vs)                       # (nv,4,4)
    b = beta(us, surface.consts)                            # (nu,4)
    bp = beta_derivatives(us, surface.consts, 1)
    F = np.einsum('vij,uj->uvi', A, b)
    fu = np.einsum('vij,uj->uvi', A, bp)

    defects: List[Tuple[int, int, str]] = []
    if surface.fv_method == "analytic":
        Ap = assemble_derivative(surface.profile, vs)
        fv = np.einsum('vij,uj->uvi', Ap, b)
        fv_ok = np.ones(nv, dtype=bool)
    else:
        h = FD_STEP_V
        lo, hi = surface.profile.v_min, surface.profile.v_max
        fv_ok = (vs - h >= lo - 1e-15) & (vs + h <= hi + 1e-15)
        fv = np.full((nu, nv, 4), np.nan)
        if np.any(fv_ok):
            vin = vs[fv_ok]

            def diff(step):
                Ad = assemble(surface.profile, vin + step) \
                    - assemble(surface.profile, vin - step)
                return np.einsum('vij,uj->uvi', Ad, b) / (2.0 * step)

            fv[:, fv_ok, :] = (4.0 * diff(h / 2) - diff(h)) / 3.0
        for j in np.nonzero(~fv_ok)[0]:
            for i in range(nu):
                defects.append((i, int(j), "out_of_domain"))

    cu = frame_components(surface.params, F, fu)
    cv = frame_components(surface.params, F, fv)
    normals = np.cross(cu, cv)

    gram = np.sum(fu * fu, -1) * np.sum(fv * fv, -1) - np.sum(fu * fv, -1) ** 2
    with np.errstate(invalid="ignore"):
        good = fv_ok[None, :] & (gram >= GRAM_DET_TOL)
    norm = np.linalg.norm(normals, axis=-1)
    angles = np.full((nu, nv), np.nan)
    angles[good] = np.arccos(np.clip(np.abs(normals[good, 0]) / norm[good], 0.0, 1.0))
    degenerate = fv_ok[None, :] & ~good
    normals[~good] = np.nan
    for i, j in zip(*np.nonzero(degenerate)):
        defects.append((int(i), int(j), "degenerate_tangent_plane"))
    defects.sort()

    return SurfaceGrid(us=us, vs=vs, positions=F, fu=fu, fv=fv,
                       normals=normals, angles=angles,
                       fv_method=surface.fv_method, defects=defects)


# --------------------------------------------------------------------------
# structure probes used by the certification suite and tests
# --------------------------------------------------------------------------

def first_fundamental_form(surface: HelixSurface, u, v):
    """(E, F, G) of the induced metric at (u, v), in the ambient metric."""
    eps = surface.params.epsilon
    F = position(surface, u, v)
    fu, fv = partials(surface, u, v)
    j1F = J1 @ F

    def g(X, Y):
        return float(X @ Y + (eps * eps - 1.0) * (X @ j1F) * (Y @ j1F))

    return g(fu, fu), g(fu, fv), g(fv, fv)


def fit_phase_constant(surface: HelixSurface, u: Optional[float] = None,
                       v: Optional[float] = None) -> float:
    """Fit the integration constant of the normal-rotation phase.

    The tangent field F_u expands as sin(th)[sin(th)/eps J1 F
    - cos(th) cos(phi) J2 F - cos(th) sin(phi) J3 F], so phi is read off
    the projections of F_u on J2 F and J3 F.  Evaluated at the domain
    corner by default.
    """
    if u is None:
        u = surface.u_domain[0]
    if v is None:
        v = surface.v_domain[0]
    F = position(surface, u, v)
    # only F_u enters, and it is always analytic
    fu = assemble(surface.profile, v) @ beta_derivatives(u, surface.consts, 1)
    p2, p3 = float(fu @ (J2 @ F)), float(fu @ (J3 @ F))
    phi = math.atan2(-p3, -p2)
    return phi + 2.0 * surface.consts.B / surface.params.epsilon * float(u)


def first_order_system_residual(surface: HelixSurface, u, v, c: float) -> float:
    """Max componentwise residual of the first-order position system.

    With phi(u) = -2 B u / eps + c the system reads
    F_u = sin(th)[sin(th)/eps J1 F - cos(th) cos(phi) J2 F
    - cos(th) sin(phi) J3 F].
    """
    th = surface.params.theta
    eps = surface.params.epsilon
    F = position(surface, u, v)
    fu = assemble(surface.profile, v) @ beta_derivatives(u, surface.consts, 1)
    phi = -2.0 * surface.consts.B / eps * float(u) + c
    rhs = math.sin(th) * (
        math.sin(th) / eps * (J1 @ F)
        - math.cos(th) * math.cos(phi) * (J2 @ F)
        - math.cos(th) * math.sin(phi) * (J3 @ F)
    )
    return float(np.max(np.abs(fu - rhs)))


def recover_coefficient_fields(surface: HelixSurface, v: float,
                               us: Optional[np.ndarray] = None) -> np.ndarray:
    """Solve for the four vector coefficients of the trig expansion of
    F(., v) from samples along u.

    Returns a (4, 4) array whose rows are the recovered vectors
    multiplying cos(a1 u), sin(a1 u), cos(a2 u), sin(a2 u).  Default
    sample nodes: u in {0, pi/(4 a1), pi/(4 a2), 1, 2}.
    """
    a1, a2 = surface.consts.alpha1, surface.consts.alpha2
    if us is None:
        us = np.array([0.0, math.pi / (4 * a1), math.pi / (4 * a2), 1.0, 2.0])
    us = np.asarray(us, dtype=float)
    M = np.stack([np.cos(a1 * us), np.sin(a1 * us),
                  np.cos(a2 * us), np.sin(a2 * us)], axis=-1)
    A = assemble(surface.profile, v)
    Fs = (A @ beta(us, surface.consts).T).T
    g, *_ = np.linalg.lstsq(M, Fs, rcond=None)
    return g
