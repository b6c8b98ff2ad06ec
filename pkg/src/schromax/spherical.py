"""Radial eigenfunction evaluation.

phi(params, lam, s) is the radial eigenfunction of the Laplace-Beltrami
operator with eigenvalue -(lam^2 + Q^2/4), normalized to 1 at s = 0. It
solves

    u'' + (A'/A) u' + (lam^2 + Q^2/4) u = 0,   u(0) = 1, u'(0) = 0.

Backends:

  * a power series around s = 0 (the s = 0 coefficient of the ODE is
    singular, so integration cannot start there);
  * numerical integration of the rescaled variable w = A^{1/2} u, which
    oscillates with O(1)-bounded envelope all the way out — tolerances then
    control the error relative to the natural size of phi instead of its
    absolute (exponentially decaying) size;
  * the closed form sin(lam*s)/(lam*sinh(s)) on the hyperbolic kind;
  * two asymptotic leading terms — a Bessel profile near s = 0 and a
    plane-wave profile with the c-function amplitude at large s — exposed
    as cross-check backends with fitted error envelopes.

The Bessel leading term carries no extra prefactor: with the 2^mu
Gamma(mu+1) Bessel normalization (normalized_bessel(mu, 0) = 1), the
conventional Gamma-quotient constant and the Bessel normalization constant
cancel exactly, as they must for the value at s = 0 to be 1. c0_constant
returns the Gamma-quotient prefactor belonging to the Gamma(mu + 1/2)
normalization for reference; the identity
c0_constant * sqrt(pi) * Gamma((n-1)/2) / Gamma(n/2) = 1 ties the two.
"""

from __future__ import annotations

import enum
import math
from collections import OrderedDict
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from . import space, specfun
from .errors import DomainError, NumericalError, PoleError

DEFAULT_R0 = 1.5

# series is evaluated only where kappa * s^2 <= 0.1225, so 22 terms put the
# truncation far below 1e-16
_SERIES_TERMS = 22
_ODE_RTOL = 1e-12
_ODE_ATOL = 1e-13

__all__ = [
    "DEFAULT_R0",
    "Backend",
    "PhiEvaluation",
    "phi",
    "phi_ode",
    "phi_grid",
    "phi_matrix",
    "phi_h3_grid",
    "phi_bessel_leading",
    "phi_hc_leading",
    "bessel_leading_value",
    "hc_leading_value",
    "c0_constant",
    "oscillating_main_constant",
    "evaluate_phi",
    "bessel_residual_envelope",
    "hc_residual_envelope",
    "bessel_fit_constant",
    "hc_fit_constant",
]


class Backend(enum.Enum):
    ODE = "ode"
    BESSEL_LEADING = "bessel"
    HC_LEADING = "hc"
    CLOSED_FORM_H3 = "closed"


@dataclass(frozen=True)
class PhiEvaluation:
    lam: float
    s: float
    value: float
    backend: Backend
    residual_estimate: float


def _series_b(params: space.SpaceParams):
    """Odd Taylor coefficients b1, b3, b5, b7 of A'/A - (n-1)/s at s = 0."""
    k, mz = params.m_v + params.m_z, params.m_z
    return (
        k / 12.0 + mz / 4.0,
        -k / 720.0 - mz / 48.0,
        k / 30240.0 + mz / 480.0,
        -k / 1209600.0 - 17.0 * mz / 80640.0,
    )


def _series_coeffs(params: space.SpaceParams, kappa):
    """Even power-series coefficients c_k of u, shape (terms+1, len(kappa))."""
    b1, b3, b5, b7 = _series_b(params)
    n = params.n
    kappa = np.atleast_1d(np.asarray(kappa, dtype=float))
    c = np.zeros((_SERIES_TERMS + 1, kappa.size))
    c[0] = 1.0
    for k in range(_SERIES_TERMS):
        acc = (kappa + 2.0 * k * b1) * c[k]
        if k >= 1:
            acc += (2.0 * k - 2.0) * b3 * c[k - 1]
        if k >= 2:
            acc += (2.0 * k - 4.0) * b5 * c[k - 2]
        if k >= 3:
            acc += (2.0 * k - 6.0) * b7 * c[k - 3]
        c[k + 1] = -acc / ((2.0 * k + 2.0) * (2.0 * k + n))
    return c


def _series_eval(coeffs, s):
    """(u, u') at scalar s from the coefficient stack; both shape (n_lam,)."""
    k = np.arange(coeffs.shape[0])
    pw = s ** (2 * k)
    u = coeffs.T @ pw
    du = coeffs.T @ (2 * k * np.where(k > 0, s ** np.maximum(2 * k - 1, 0), 0.0))
    return u, du


def _switch_point(kappa_max: float) -> float:
    return max(1e-3, min(0.2, 0.35 / math.sqrt(max(kappa_max, 1e-30))))


def _potential(params: space.SpaceParams, s):
    """V(s) with w'' = (V - lam^2) w for w = A^{1/2} u; V -> 0 as s -> inf."""
    half = 0.5 * s
    k, mz = params.m_v + params.m_z, params.m_z
    p = 0.5 * k / np.tanh(half) + 0.5 * mz * np.tanh(half)
    dp = -0.25 * k / np.sinh(half) ** 2 + 0.25 * mz / np.cosh(half) ** 2
    return 0.25 * p * p + 0.5 * dp - 0.25 * params.Q**2


_PHI_CACHE: OrderedDict = OrderedDict()
_PHI_CACHE_MAX = 40


def phi_grid(params: space.SpaceParams, lam, s) -> np.ndarray:
    """phi values on the product grid, shape (len(s), len(lam)), via ODE.

    One vectorized integration carries all lam simultaneously; results are
    cached on (params, lam, s). Evenness in lam holds exactly (only lam^2
    enters).
    """
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(s < 0.0):
        raise DomainError("phi requires s >= 0")
    key = (params, lam.tobytes(), s.tobytes())
    hit = _PHI_CACHE.get(key)
    if hit is not None:
        _PHI_CACHE.move_to_end(key)
        return hit

    kappa = lam * lam + 0.25 * params.Q**2
    out = np.empty((s.size, lam.size))
    s_sw = _switch_point(float(kappa.max()))
    coeffs = _series_coeffs(params, kappa)

    near = s <= s_sw
    for i in np.flatnonzero(near):
        out[i], _ = _series_eval(coeffs, float(s[i]))

    far_idx = np.flatnonzero(~near)
    if far_idx.size:
        order = far_idx[np.argsort(s[far_idx], kind="stable")]
        targets = s[order]
        u0, du0 = _series_eval(coeffs, s_sw)
        root_a = math.sqrt(space.density(params, s_sw))
        p0 = space.log_density_derivative(params, s_sw)
        y0 = np.concatenate([root_a * u0, root_a * (du0 + 0.5 * p0 * u0)])
        lam2 = lam * lam
        m = lam.size

        def rhs(t, y):
            return np.concatenate([y[m:], (_potential(params, t) - lam2) * y[:m]])

        # strictly increasing t_eval; duplicates restored afterwards
        uniq, inv = np.unique(targets, return_inverse=True)
        sol = solve_ivp(rhs, (s_sw, float(uniq[-1])), y0, method="DOP853",
                        t_eval=uniq, rtol=_ODE_RTOL, atol=_ODE_ATOL)
        if not sol.success:
            raise NumericalError(
                f"phi integration failed at lam_max={lam.max():g}: {sol.message}")
        w = sol.y[:m, :].T[inv]
        out[order] = w / np.sqrt(space.density(params, targets))[:, None]

    out.setflags(write=False)
    _PHI_CACHE[key] = out
    if len(_PHI_CACHE) > _PHI_CACHE_MAX:
        _PHI_CACHE.popitem(last=False)
    return out


def phi_ode(params: space.SpaceParams, lam: float, s: float) -> float:
    """Scalar reference backend (series startup + vector ODE)."""
    return float(phi_grid(params, [float(lam)], [float(s)])[0, 0])


def phi_h3_grid(lam, s) -> np.ndarray:
    """Closed form sin(lam s)/(lam sinh s) on the product grid (n_s, n_lam)."""
    lam = np.atleast_1d(np.asarray(lam, dtype=float))
    s = np.atleast_1d(np.asarray(s, dtype=float))
    if np.any(s < 0.0):
        raise DomainError("phi requires s >= 0")
    z = s[:, None] * lam[None, :]
    sink = np.sinc(z / np.pi)  # sin(z)/z with the removable singularity
    ratio = np.ones_like(s)
    pos = s > 0.0
    ratio[pos] = s[pos] / np.sinh(s[pos])
    return sink * ratio[:, None]


def phi_matrix(params: space.SpaceParams, lam, s) -> np.ndarray:
    """Best-backend product-grid evaluation used by the transform layer."""
    if params.kind == space.HYPERBOLIC_H3:
        return phi_h3_grid(lam, s)
    return phi_grid(params, lam, s)


def phi(params: space.SpaceParams, lam: float, s: float) -> float:
    """Best-available phi value (closed form on the hyperbolic kind)."""
    if params.kind == space.HYPERBOLIC_H3:
        return float(phi_h3_grid([float(lam)], [float(s)])[0, 0])
    return phi_ode(params, lam, s)


def c0_constant(params: space.SpaceParams) -> float:
    """Gamma-quotient prefactor Gamma(n/2)/(sqrt(pi) Gamma((n-1)/2)).

    This is the constant that multiplies the Gamma(mu+1/2)-normalized
    Bessel factor; in the Gamma(mu+1)-normalization used by
    normalized_bessel the two cancel and the leading coefficient is 1.
    """
    n = params.n
    return math.gamma(0.5 * n) / (math.sqrt(math.pi) * math.gamma(0.5 * (n - 1)))


def bessel_leading_value(params: space.SpaceParams, lam, s):
    """(s^{n-1}/A)^{1/2} * J-normalized((n-2)/2, lam*s); exact phi on H3."""
    lam = np.asarray(lam, dtype=float)
    s = np.asarray(s, dtype=float)
    if np.any(s <= 0.0):
        raise DomainError("bessel leading term needs s > 0")
    mu = 0.5 * (params.n - 2)
    amp = np.sqrt(s ** (params.n - 1) / space.density(params, s))
    out = amp * specfun.normalized_bessel(mu, np.abs(lam) * s)
    return float(out) if out.ndim == 0 else out


def bessel_residual_envelope(params: space.SpaceParams, lam, s):
    """Shape s^2 * min(1, |lam s|^{-(n+1)/2}) of the near-regime error."""
    z = np.abs(np.asarray(lam, dtype=float) * np.asarray(s, dtype=float))
    s2 = np.asarray(s, dtype=float) ** 2
    out = s2 * np.where(z > 1.0, np.maximum(z, 1e-300) ** (-0.5 * (params.n + 1)), 1.0)
    return float(out) if out.ndim == 0 else out


_BESSEL_FIT: dict = {}
_HC_FIT: dict = {}


def bessel_fit_constant(params: space.SpaceParams, r0: float = DEFAULT_R0) -> float:
    """Envelope constant fitted on a reference grid (cached per geometry)."""
    key = (params, round(r0, 12))
    if key not in _BESSEL_FIT:
        lam = np.array([0.5, 1.0, 2.0, 5.0, 10.0, 25.0])
        s = np.geomspace(1e-3, r0, 40)
        resid = np.abs(phi_grid(params, lam, s)
                       - bessel_leading_value(params, lam[None, :], s[:, None]))
        env = bessel_residual_envelope(params, lam[None, :], s[:, None])
        _BESSEL_FIT[key] = max(1.05 * float(np.max(resid / env)), 1e-12)
    return _BESSEL_FIT[key]


def phi_bessel_leading(params: space.SpaceParams, lam: float, s: float,
                       r0: float = DEFAULT_R0):
    """Near-regime leading term; returns (value, error_bound_ok).

    error_bound_ok compares |phi_ode - value| against the fitted envelope
    constant times bessel_residual_envelope.
    """
    if not 0.0 < s <= r0:
        raise DomainError(f"bessel regime needs 0 < s <= {r0}, got {s}")
    value = float(bessel_leading_value(params, lam, s))
    bound = bessel_fit_constant(params, r0) * bessel_residual_envelope(params, lam, s)
    ok = abs(phi_ode(params, lam, s) - value) <= bound
    return value, bool(ok)


def hc_leading_value(params: space.SpaceParams, lam, s):
    """2^{-m_z/2} A^{-1/2} * 2 Re(c(lam) e^{i lam s}); exact phi on H3."""
    lam = np.asarray(lam, dtype=float)
    s = np.asarray(s, dtype=float)
    c = space.c_function(params, lam)
    amp = 2.0 ** (-0.5 * params.m_z) / np.sqrt(space.density(params, s))
    out = amp * 2.0 * np.real(c * np.exp(1j * lam * s))
    return float(out) if np.ndim(out) == 0 else out


def hc_residual_envelope(params: space.SpaceParams, lam, s):
    """Shape A^{-1/2} |c(lam)| (1+|lam|)^{-1} of the far-regime error."""
    lam = np.asarray(lam, dtype=float)
    out = (np.abs(space.c_function(params, lam))
           / np.sqrt(space.density(params, np.asarray(s, dtype=float)))
           / (1.0 + np.abs(lam)))
    return float(out) if np.ndim(out) == 0 else out


def hc_fit_constant(params: space.SpaceParams, r0: float = DEFAULT_R0) -> float:
    key = (params, round(r0, 12))
    if key not in _HC_FIT:
        lam = np.geomspace(1.0, 100.0, 25)
        s = np.linspace(r0, 10.0, 20)
        resid = np.abs(phi_grid(params, lam, s)
                       - hc_leading_value(params, lam[None, :], s[:, None]))
        env = hc_residual_envelope(params, lam[None, :], s[:, None])
        _HC_FIT[key] = max(1.05 * float(np.max(resid / env)), 1e-12)
    return _HC_FIT[key]


def phi_hc_leading(params: space.SpaceParams, lam: float, s: float,
                   r0: float = DEFAULT_R0):
    """Far-regime leading term; returns (value, residual_bound_ok).

    lam below 1e-6 is rejected: the amplitude function has a pole at 0 and
    the plane-wave form carries no information there.
    """
    if abs(lam) < 1e-6:
        raise PoleError("far-regime form is undefined near lam = 0")
    if s < r0:
        raise DomainError(f"far regime needs s >= {r0}, got {s}")
    value = float(hc_leading_value(params, lam, s))
    bound = hc_fit_constant(params, r0) * hc_residual_envelope(params, lam, s)
    ok = abs(phi_ode(params, lam, s) - value) <= bound
    return value, bool(ok)


def oscillating_main_constant(params: space.SpaceParams) -> float:
    """K with phi ~ K (s^{n-1}/A)^{1/2} (lam s)^{-(n-1)/2} cos(lam s - (n-1)pi/4).

    Equals 1 on the hyperbolic kind, where the cosine profile is exact.
    """
    n = params.n
    return 2.0 ** (0.5 * (n - 1)) * math.gamma(0.5 * n) / math.sqrt(math.pi)


def evaluate_phi(params: space.SpaceParams, lam: float, s: float,
                 backend: Backend = Backend.ODE) -> PhiEvaluation:
    """Single-point evaluation with an a-priori residual estimate.

    residual_estimate is the backend's error envelope (fitted for the two
    expansion backends, the integration tolerance target for the ODE);
    it is a size estimate, not a certified bound.
    """
    if backend == Backend.CLOSED_FORM_H3:
        if params.kind != space.HYPERBOLIC_H3:
            raise DomainError("closed-form backend is hyperbolic-only")
        value = float(phi_h3_grid([lam], [s])[0, 0])
        return PhiEvaluation(lam, s, value, backend, 5e-16)
    if backend == Backend.ODE:
        return PhiEvaluation(lam, s, phi_ode(params, lam, s), backend, 1e-9)
    if backend == Backend.BESSEL_LEADING:
        value, _ = phi_bessel_leading(params, lam, s)
        est = bessel_fit_constant(params) * bessel_residual_envelope(params, lam, s)
        return PhiEvaluation(lam, s, value, backend, float(est))
    if backend == Backend.HC_LEADING:
        value, _ = phi_hc_leading(params, lam, s)
        est = hc_fit_constant(params) * hc_residual_envelope(params, lam, s)
        return PhiEvaluation(lam, s, value, backend, float(est))
    raise DomainError(f"unknown backend {backend!r}")
