"""Closed-form constants and auxiliary scalar fields of a helix surface.

Every quantity here is an explicit function of (epsilon, theta); nothing
is obtained by integrating an ODE.  The ODE residual checks elsewhere
treat these closed forms as the candidate solutions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Union

from .ambient import BergerParams
from .errors import InvalidAngle, NearPole

LAMBDA_POLE_TOL = 1e-6


@dataclass(frozen=True)
class HelixConstants:
    """All scalars derived from (epsilon, theta).

    B is the fiber-deformation factor 1 + (eps^2 - 1) cos^2(theta);
    alpha1 > alpha2 > 0 are the angular frequencies of the torus
    geodesic; g11 = c1 and g33 = c2 are the squared circle radii;
    a_tilde, b_tilde the coefficients of the linear recursion satisfied
    by the position vector; d_const, e_const, i_const the derived
    product constants; gauss_k the intrinsic curvature; slope the
    frequency ratio alpha2/alpha1.
    """

    B: float
    alpha1: float
    alpha2: float
    g11: float
    g33: float
    c1: float
    c2: float
    a_tilde: float
    b_tilde: float
    d_const: float
    e_const: float
    i_const: float
    gauss_k: float
    slope: float


def compute_constants(params: BergerParams) -> HelixConstants:
    """Evaluate every helix constant from the closed forms.

    Raises InvalidAngle for theta outside the open interval (0, pi/2);
    BergerParams already guards this, so the re-check only matters for
    hand-built parameter objects.
    """
    eps, th = params.epsilon, params.theta
    if not 0.0 < th < math.pi / 2:
        raise InvalidAngle(f"theta={th} outside (0, pi/2)")
    ct, st = math.cos(th), math.sin(th)
    B = 1.0 + (eps * eps - 1.0) * ct * ct
    sB = math.sqrt(B)
    alpha1 = (B + eps * sB * ct) / eps
    alpha2 = (B - eps * sB * ct) / eps
    c1 = 0.5 - eps * ct / (2.0 * sB)
    c2 = 0.5 + eps * ct / (2.0 * sB)
    g11 = eps / (2.0 * B) * alpha2
    g33 = eps / (2.0 * B) * alpha1
    a_tilde = st * st * B / (eps * eps)
    b_tilde = -2.0 * B / eps
    d_const = B * b_tilde * b_tilde * st * st / (eps * eps) - 3.0 * a_tilde * a_tilde
    e_const = (b_tilde * b_tilde - 2.0 * a_tilde) * d_const \
        - B * a_tilde * a_tilde * st * st / (eps * eps)
    i_const = B * st * st * (st * st - 2.0 * B) / eps ** 3
    gauss_k = 4.0 * (1.0 - eps * eps) * ct * ct
    slope = alpha2 / alpha1
    return HelixConstants(
        B=B, alpha1=alpha1, alpha2=alpha2, g11=g11, g33=g33, c1=c1, c2=c2,
        a_tilde=a_tilde, b_tilde=b_tilde, d_const=d_const, e_const=e_const,
        i_const=i_const, gauss_k=gauss_k, slope=slope,
    )


def _zero_eta(v: float) -> float:
    return 0.0


@dataclass(frozen=True)
class AuxFieldParams:
    """Free data of the auxiliary fields: eta(v) and the phase offset c.

    eta may be a constant or any smooth callable of v; it enters only
    the field-level residual checks, never the surface generator.
    """

    eta: Union[float, Callable[[float], float]] = field(default_factory=lambda: _zero_eta)
    c_phi: float = 0.0

    def eta_at(self, v: float) -> float:
        if callable(self.eta):
            return float(self.eta(v))
        return float(self.eta)


def _tan_argument(u: float, aux: AuxFieldParams, v: float,
                  consts: HelixConstants, params: BergerParams) -> float:
    return aux.eta_at(v) - 2.0 * math.cos(params.theta) * math.sqrt(consts.B) * u


def lambda_field(u: float, aux: AuxFieldParams, v: float,
                 consts: HelixConstants, params: BergerParams) -> float:
    """The shape-operator trace field 2 sqrt(B) tan(eta(v) - 2 cos(theta) sqrt(B) u).

    Refuses to evaluate within LAMBDA_POLE_TOL of a pole of tan, where
    the adapted coordinates break down.
    """
    arg = _tan_argument(u, aux, v, consts, params)
    r = (arg - math.pi / 2) % math.pi
    if min(r, math.pi - r) < LAMBDA_POLE_TOL:
        raise NearPole(f"tan argument {arg} within {LAMBDA_POLE_TOL} of a pole")
    return 2.0 * math.sqrt(consts.B) * math.tan(arg)


def ab_coefficients(u: float, aux: AuxFieldParams, v: float,
                    consts: HelixConstants, params: BergerParams):
    """Coefficients (a, b) expanding the v-coordinate field in (T, JT).

    They satisfy the exact identity (B/eps^2) a^2 + b^2 = 1.
    """
    arg = _tan_argument(u, aux, v, consts, params)
    a = params.epsilon / math.sqrt(consts.B) * math.sin(arg)
    b = math.cos(arg)
    return a, b


def phi_field(u: float, aux: AuxFieldParams,
              consts: HelixConstants, params: BergerParams) -> float:
    """The normal-rotation phase, affine in u with slope -2B/eps."""
    return -2.0 * consts.B / params.epsilon * u + aux.c_phi
