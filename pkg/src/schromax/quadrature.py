"""Panel quadrature helpers.

Everything downstream integrates either a smoothly decaying tail or an
oscillation whose local phase rate is known in advance. Both cases are
handled with composite Gauss-Legendre panels: for oscillations the panel
edges are chosen so the phase advances at most PHASE_PER_NODE per node,
for tails the panels grow geometrically until their contribution drops
below a relative floor.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import DivergentIntegralError, DomainError

# order-16 panels with <= pi/4 phase per node resolve the oscillation to
# well below 1e-13 relative error
PANEL_ORDER = 16
PHASE_PER_NODE = 0.25 * math.pi

_GL_CACHE: dict = {}
_GH_CACHE: dict = {}

__all__ = [
    "PANEL_ORDER",
    "PHASE_PER_NODE",
    "gauss_legendre",
    "gauss_hermite",
    "panel_nodes",
    "phase_panel_edges",
    "decay_quad",
]


def gauss_legendre(order: int):
    if order not in _GL_CACHE:
        _GL_CACHE[order] = np.polynomial.legendre.leggauss(order)
    return _GL_CACHE[order]


def gauss_hermite(order: int):
    if order not in _GH_CACHE:
        _GH_CACHE[order] = np.polynomial.hermite.hermgauss(order)
    return _GH_CACHE[order]


def panel_nodes(edges, order: int = PANEL_ORDER):
    """Composite Gauss-Legendre nodes/weights over consecutive [e_i, e_{i+1}]."""
    edges = np.asarray(edges, dtype=float)
    if edges.ndim != 1 or edges.size < 2:
        raise DomainError("panel_nodes needs at least two edges")
    if np.any(np.diff(edges) <= 0.0):
        raise DomainError("panel edges must be strictly increasing")
    x, w = gauss_legendre(order)
    lo = edges[:-1]
    half = 0.5 * np.diff(edges)
    nodes = (lo + half)[:, None] + half[:, None] * x[None, :]
    weights = half[:, None] * w[None, :]
    return nodes.ravel(), weights.ravel()


def phase_panel_edges(lo: float, hi: float, phase_rate: float,
                      order: int = PANEL_ORDER, forced=()):
    """Panel edges on [lo, hi] keeping phase advance per node <= PHASE_PER_NODE.

    phase_rate is an upper bound for |d(phase)/dx| on the interval; forced
    lists interior break points that must appear among the edges (used to
    make split integrals add up to the unsplit one exactly).
    """
    if hi <= lo:
        raise DomainError("phase_panel_edges needs hi > lo")
    width = order * PHASE_PER_NODE / max(phase_rate, 1e-300)
    breaks = [lo] + sorted({float(x) for x in forced if lo < x < hi}) + [hi]
    edges = [lo]
    for a, b in zip(breaks[:-1], breaks[1:]):
        k = max(1, int(math.ceil((b - a) / width)))
        edges.extend(np.linspace(a, b, k + 1)[1:])
    return np.array(edges)


def decay_quad(f, scale: float, order: int = PANEL_ORDER,
               rel_tol: float = 1e-14, max_panels: int = 200) -> complex:
    """Integral of f over [0, inf) for f decaying on the given length scale.

    Panels [0, h], [h, 2h], [2h, 4h], ... with h = scale, each by
    Gauss-Legendre; stops once two consecutive panels contribute below
    rel_tol of the running total. f must accept a vector argument.
    """
    if scale <= 0.0:
        raise DomainError("decay scale must be positive")
    x, w = gauss_legendre(order)
    total = 0.0 + 0.0j
    a, width = 0.0, scale
    small = 0
    for _ in range(max_panels):
        half = 0.5 * width
        contrib = np.sum(np.asarray(f(a + half + half * x)) * w) * half
        total += contrib
        if abs(contrib) <= rel_tol * max(abs(total), 1e-300):
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
        a += width
        width *= 2.0
    raise DivergentIntegralError(
        "tail integral failed to settle within the panel budget")
