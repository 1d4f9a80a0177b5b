"""Composite Gauss-Legendre rules graded around the peaks of Poisson-type integrands.

On the circle of radius ``r`` the functions ``|B'|`` and ``sum P_{z_n}`` have
peaks of width about ``1 - r|z_n|`` at ``arg z_n``. A uniform rule misses
those peaks once they are narrower than the node spacing, so panel edges are
added at geometrically spaced offsets around each narrow peak.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

TWO_PI = 2.0 * np.pi


@lru_cache(maxsize=8)
def gauss_legendre(order: int):
    x, w = np.polynomial.legendre.leggauss(order)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def circle_edges(points: np.ndarray, r: float, n_base: int) -> np.ndarray:
    """Sorted panel edges on ``[0, 2pi]`` for integrating over ``|z| = r``."""
    base = np.linspace(0.0, TWO_PI, n_base + 1)
    h = TWO_PI / n_base
    if points.size == 0:
        return base
    mod = np.abs(points)
    width = 1.0 - r * mod
    narrow = width < 2.0 * h
    if not np.any(narrow):
        return base
    centres = np.angle(points[narrow])
    width = width[narrow]
    kmax = int(np.ceil(np.log2(2.0 * h / width.min()))) + 1
    ks = 2.0 ** np.arange(-2, kmax + 1)
    offs = width[:, None] * ks[None, :]
    offs = np.where(offs <= 2.0 * h, offs, np.nan)
    extra = np.concatenate([centres, (centres[:, None] + offs).ravel(),
                            (centres[:, None] - offs).ravel()])
    extra = extra[np.isfinite(extra)]
    extra = np.mod(extra, TWO_PI)
    edges = np.unique(np.concatenate([base, extra]))
    # drop edges that nearly coincide so no panel degenerates
    keep = np.concatenate([[True], np.diff(edges) > 1e-13])
    edges = edges[keep]
    edges[-1] = TWO_PI
    return edges


def split_panels(edges: np.ndarray, times: int) -> np.ndarray:
    """Halve every panel ``times`` times."""
    for _ in range(times):
        mids = 0.5 * (edges[:-1] + edges[1:])
        out = np.empty(edges.size + mids.size)
        out[0::2] = edges
        out[1::2] = mids
        edges = out
    return edges


def panel_rule(edges: np.ndarray, order: int):
    """Nodes and weights of the composite rule on the given panels."""
    x, w = gauss_legendre(order)
    a = edges[:-1, None]
    half = 0.5 * (edges[1:] - edges[:-1])[:, None]
    nodes = a + half * (x[None, :] + 1.0)
    weights = half * w[None, :]
    return nodes.ravel(), weights.ravel()


def dyadic_radial_rule(levels: int, order: int):
    """Nodes in ``t = 1 - r`` on the panels ``[2^-(k+1), 2^-k]``, k < levels.

    Returns ``(t, weights, t_tail)`` where ``[0, t_tail]`` is left uncovered.
    """
    x, w = gauss_legendre(order)
    hi = 2.0 ** -np.arange(levels)
    lo = hi / 2.0
    half = 0.5 * (hi - lo)[:, None]
    t = lo[:, None] + half * (x[None, :] + 1.0)
    return t.ravel(), (half * w[None, :]).ravel(), float(lo[-1])
