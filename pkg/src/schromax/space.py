"""Geometry of the radial analysis.

A space is described by the pair (m_v, m_z); every radial formula depends
only on it. Derived quantities:

    n = m_v + m_z + 1            homogeneous dimension of the radial model
    Q = m_v/2 + m_z              exponential volume growth rate
    A(s) = 2^{m_v+m_z} sinh^{m_v+m_z}(s/2) cosh^{m_z}(s/2)

plus the Harish-Chandra c-function, the Plancherel weight |c|^{-2}, and the
low-frequency cut constant built from the Bessel-split fit.

The three-dimensional hyperbolic space is carried as its own kind with the
curvature normalization A(s) = sinh^2(s). That normalization coincides with
the degenerate parameter point (m_v, m_z) = (0, 2): the generic density and
c-function formulas reproduce sinh^2(s) and 1/(i*lambda) exactly there,
which the test suite uses as a cross-check, while closed forms are used on
the hot paths.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from . import specfun
from .errors import DomainError, PoleError

DAMEK_RICCI = "damek_ricci"
HYPERBOLIC_H3 = "h3"

__all__ = [
    "SpaceParams",
    "damek_ricci",
    "hyperbolic_h3",
    "density",
    "log_density_derivative",
    "c_function",
    "plancherel_density",
    "bn_constant",
]


@dataclass(frozen=True)
class SpaceParams:
    kind: str
    m_v: int
    m_z: int

    def __post_init__(self):
        if self.kind == DAMEK_RICCI:
            if self.m_v < 2 or self.m_v % 2 != 0:
                raise DomainError(f"m_v must be even and >= 2, got {self.m_v}")
            if self.m_z < 1:
                raise DomainError(f"m_z must be >= 1, got {self.m_z}")
        elif self.kind == HYPERBOLIC_H3:
            if (self.m_v, self.m_z) != (0, 2):
                raise DomainError("the hyperbolic kind fixes (m_v, m_z) = (0, 2)")
        else:
            raise DomainError(f"unknown space kind {self.kind!r}")

    @property
    def n(self) -> int:
        return self.m_v + self.m_z + 1

    @property
    def Q(self) -> float:
        return 0.5 * self.m_v + self.m_z

    @property
    def rho(self) -> float:
        return 0.5 * self.Q

    @property
    def time_window(self) -> float:
        """Upper end 4/Q^2 of the time interval used by the maximal function."""
        return 4.0 / (self.Q * self.Q)

    def to_config(self) -> dict:
        if self.kind == HYPERBOLIC_H3:
            return {"kind": HYPERBOLIC_H3}
        return {"kind": DAMEK_RICCI, "m_v": self.m_v, "m_z": self.m_z}

    @classmethod
    def from_config(cls, cfg) -> "SpaceParams":
        if isinstance(cfg, str):
            cfg = json.loads(cfg)
        kind = cfg.get("kind")
        if kind == HYPERBOLIC_H3:
            return hyperbolic_h3()
        if kind == DAMEK_RICCI:
            try:
                return damek_ricci(int(cfg["m_v"]), int(cfg["m_z"]))
            except KeyError as exc:
                raise DomainError(f"missing field {exc} in space config") from exc
        raise DomainError(f"unknown space kind {kind!r}")


def damek_ricci(m_v: int, m_z: int) -> SpaceParams:
    return SpaceParams(DAMEK_RICCI, m_v, m_z)


def hyperbolic_h3() -> SpaceParams:
    return SpaceParams(HYPERBOLIC_H3, 0, 2)


def density(params: SpaceParams, s):
    """Radial volume density A(s); A(s)/s^{n-1} -> 1 at 0, A(s)/e^{Qs} -> 2^{-m_z}."""
    arr = np.asarray(s, dtype=float)
    if np.any(arr < 0.0):
        raise DomainError("density requires s >= 0")
    if params.kind == HYPERBOLIC_H3:
        out = np.sinh(arr) ** 2
    else:
        k = params.m_v + params.m_z
        out = 2.0**k * np.sinh(0.5 * arr) ** k * np.cosh(0.5 * arr) ** params.m_z
    return float(out) if np.ndim(s) == 0 else out


def log_density_derivative(params: SpaceParams, s):
    """A'(s)/A(s) = (m_v+m_z)/2 coth(s/2) + m_z/2 tanh(s/2); ~ (n-1)/s at 0."""
    arr = np.asarray(s, dtype=float)
    if np.any(arr <= 0.0):
        raise DomainError("log_density_derivative requires s > 0")
    half = 0.5 * arr
    out = 0.5 * (params.m_v + params.m_z) / np.tanh(half) + 0.5 * params.m_z * np.tanh(half)
    return float(out) if np.ndim(s) == 0 else out


def _log_c(params: SpaceParams, lam):
    """log c(lambda) for the generic Gamma-quotient formula, elementwise."""
    Q, n, m_v = params.Q, params.n, params.m_v

    def one(x: float) -> complex:
        il = 1j * x
        return (
            (Q - 2.0 * il) * math.log(2.0)
            + specfun.complex_loggamma(2.0 * il)
            - specfun.complex_loggamma(0.5 * Q + il)
            + math.lgamma(0.5 * n)
            - specfun.complex_loggamma(0.25 * (m_v + 2.0) + il)
        )

    arr = np.asarray(lam, dtype=float)
    flat = np.array([one(x) for x in arr.ravel()], dtype=complex)
    return flat.reshape(arr.shape)


def c_function(params: SpaceParams, lam):
    """Harish-Chandra c-function

        c(lambda) = 2^{Q-2i lambda} Gamma(2i lambda) / Gamma((Q+2i lambda)/2)
                    * Gamma(n/2) / Gamma((m_v + 4i lambda + 2)/4),

    assembled in log space so quotients of huge Gamma values stay finite.
    On the hyperbolic kind this collapses to 1/(i lambda) exactly, which is
    returned in closed form. lambda = 0 is a pole.
    """
    arr = np.asarray(lam, dtype=float)
    if np.any(arr == 0.0):
        raise PoleError("c_function has a pole at lambda = 0")
    if params.kind == HYPERBOLIC_H3:
        out = -1j / arr
    else:
        out = np.exp(_log_c(params, arr))
    return complex(out) if np.ndim(lam) == 0 else out


def plancherel_density(params: SpaceParams, lam):
    """Plancherel weight |c(lambda)|^{-2}, continuously extended by 0 at 0.

    Even in lambda; grows like lambda^2 (1+lambda)^{n-3} with geometry-
    dependent constants. On the hyperbolic kind it is exactly lambda^2.
    """
    arr = np.abs(np.asarray(lam, dtype=float))
    if params.kind == HYPERBOLIC_H3:
        out = arr**2
    else:
        out = np.zeros(arr.shape, dtype=float)
        nz = arr > 0.0
        if np.any(nz):
            out[nz] = np.exp(-2.0 * np.real(_log_c(params, arr[nz])))
    return float(out) if np.ndim(lam) == 0 else out


_BN_CACHE: dict = {}


def bn_constant(params: SpaceParams, r0: float) -> float:
    """Low-frequency cut constant B = max(r0, A_mu) with mu = (n-2)/2.

    A_mu is the fitted onset abscissa of the cosine-split envelope from
    specfun.fit_asymptotic_constants; the frequency split point of the
    operator decomposition is B/s. Requires 0 < r0 < 2 so that the
    near-regime expansion stays inside its window.
    """
    if not 0.0 < r0 < 2.0:
        raise DomainError(f"r0 must lie in (0, 2), got {r0}")
    mu = 0.5 * (params.n - 2)
    if mu not in _BN_CACHE:
        _BN_CACHE[mu] = specfun.fit_asymptotic_constants(mu)
    a_mu, _ = _BN_CACHE[mu]
    return max(r0, a_mu)
