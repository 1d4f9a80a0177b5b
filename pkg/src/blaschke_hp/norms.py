"""Integral functionals of finite Blaschke products.

Boundary integrals use the normalised measure ``dtheta / 2pi``; area
integrals use plain Lebesgue measure ``dm``. Switching the boundary measure
to plain ``dtheta`` would only rescale comparability constants by ``2pi``.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field, fields
from typing import Optional

import numpy as np

from . import _quadrature as quad
from .core import BlaschkeProduct, ZeroList, boundary_derivative, derivative, log_modulus
from .exceptions import (ConvergenceError, CrossCheckError, EnclosureError, NumericalError,
                         ParameterError)

SCHEMA_VERSION = 1


@dataclass(frozen=True)
class QuadratureConfig:
    """Resolution and tolerance knobs shared by every numerical integral.

    Attributes
    ----------
    boundary_samples : int
        Nodes of the base boundary rule (split into panels of ``gl_order``
        Gauss-Legendre nodes). Panels are added around narrow peaks.
    radial_levels : int
        Dyadic radial panels ``1 - r in [2^-(k+1), 2^-k]`` for area integrals;
        the remaining strip next to the circle is handled with boundary values.
    refinement_depth : int
        Quad-tree depth of the sublevel-set cells below the initial
        Whitney cells.
    rel_tol : float
        Relative tolerance for adaptive boundary rules and sublevel enclosures.
    radial_offset : float
        ``1 - r`` of the interior circle used to cross-check boundary values.
    gl_order : int
        Gauss-Legendre nodes per panel.
    area_angular_panels : int
        Base angular panels on each interior circle of an area integral.
    max_doublings : int
        Panel halvings allowed before an adaptive boundary rule gives up.
    cross_check_tol : float
        Allowed relative mismatch between boundary and near-boundary means.
    """

    boundary_samples: int = 8192
    radial_levels: int = 24
    refinement_depth: int = 12
    rel_tol: float = 1e-3
    radial_offset: float = 1e-6
    gl_order: int = 8
    area_angular_panels: int = 128
    max_doublings: int = 4
    cross_check_tol: float = 1e-2

    def __post_init__(self):
        if self.boundary_samples < 64:
            raise ParameterError("boundary_samples must be >= 64")
        if not 0 <= self.refinement_depth <= 30:
            raise ParameterError("refinement_depth must lie in [0, 30]")
        if not 0 < self.rel_tol < 1:
            raise ParameterError("rel_tol must lie in (0, 1)")
        if not 0 < self.radial_offset < 1:
            raise ParameterError("radial_offset must lie in (0, 1)")
        if self.radial_levels < 1 or self.gl_order < 1 or self.area_angular_panels < 4:
            raise ParameterError("radial_levels, gl_order and area_angular_panels must be positive")

    @property
    def boundary_panels(self) -> int:
        return max(8, self.boundary_samples // self.gl_order)

    def to_dict(self) -> dict:
        return asdict(self)


DEFAULT_CONFIG = QuadratureConfig()


def _cfg(cfg):
    return DEFAULT_CONFIG if cfg is None else cfg


def _check_open_unit(name, x):
    if not 0 < x < 1:
        raise ParameterError(f"{name} must lie in (0, 1), got {x!r}")


# ---------------------------------------------------------------------------
# boundary and circle rules
# ---------------------------------------------------------------------------

def _adaptive_circle(func, points, r, cfg, n_base):
    """Integrate ``func(theta)`` over [0, 2pi] with panel halving until stable.

    Returns ``(integral, nodes, weights, values)`` of the accepted rule.
    """
    edges = quad.circle_edges(points, r, n_base)
    prev = None
    for k in range(cfg.max_doublings + 1):
        th, w = quad.panel_rule(quad.split_panels(edges, k), cfg.gl_order)
        vals = func(th)
        val = float(w @ vals)
        if prev is not None and abs(val - prev) <= cfg.rel_tol * abs(val):
            return val, th, w, vals
        if prev is not None and val == 0.0 and prev == 0.0:
            return val, th, w, vals
        prev = val
    raise ConvergenceError(
        f"circle quadrature at r={r} not converged after {cfg.max_doublings} doublings")


def _boundary_rule(B: BlaschkeProduct, p: float, cfg):
    """Accepted boundary rule for ``(sum P)^p``: (mean, nodes, weights, values)."""
    pts = B.zeros.points
    val, th, w, vals = _adaptive_circle(lambda t: boundary_derivative(B, t) ** p,
                                        pts, 1.0, cfg, cfg.boundary_panels)
    return val / (2 * np.pi), th, w, vals


def boundary_mean(B: BlaschkeProduct, p: float, cfg: Optional[QuadratureConfig] = None) -> float:
    """``(1/2pi) int |B'(e^{i theta})|^p dtheta``, the p-th power of the H^p norm."""
    cfg = _cfg(cfg)
    if B.degree == 0:
        return 0.0
    return _boundary_rule(B, p, cfg)[0]


def integral_mean(B: BlaschkeProduct, p: float, r: float,
                  cfg: Optional[QuadratureConfig] = None) -> float:
    """Integral mean ``M_p(r, B') = ((1/2pi) int |B'(r e^{it})|^p dt)^(1/p)``.

    Raises
    ------
    ConvergenceError
        If ``cfg.max_doublings`` panel halvings do not reach ``cfg.rel_tol``.
    """
    cfg = _cfg(cfg)
    _check_open_unit("r", r)
    if p <= 0:
        raise ParameterError("p must be positive")
    if B.degree == 0:
        return 0.0
    val = _adaptive_circle(lambda t: np.abs(derivative(B, r * np.exp(1j * t))) ** p,
                           B.zeros.points, r, cfg, cfg.boundary_panels)[0]
    return (val / (2 * np.pi)) ** (1.0 / p)


def hp_norm(B: BlaschkeProduct, p: float, cfg: Optional[QuadratureConfig] = None,
            *, cross_check: bool = True) -> float:
    """``||B'||_{H^p}``.

    For finite products the integral means increase with ``r``, so the
    supremum is the boundary value, computed from the angular derivative
    ``sum P_{z_n}``. The result is cross-checked against
    :func:`integral_mean` at ``r = 1 - cfg.radial_offset``.

    Raises
    ------
    CrossCheckError
        If the two values differ by more than ``cfg.cross_check_tol``.
    """
    cfg = _cfg(cfg)
    if p <= 0:
        raise ParameterError("p must be positive")
    if B.degree == 0:
        return 0.0
    value = boundary_mean(B, p, cfg) ** (1.0 / p)
    if cross_check:
        inner = integral_mean(B, p, 1.0 - cfg.radial_offset, cfg)
        if abs(inner - value) > cfg.cross_check_tol * value:
            raise CrossCheckError(
                f"boundary H^p value {value:.6g} vs interior mean {inner:.6g}")
    return value


def weak_hp_quasinorm(B: BlaschkeProduct, p: float,
                      cfg: Optional[QuadratureConfig] = None) -> float:
    """``sup_lambda lambda^p |{theta : |B'(e^{i theta})| > lambda}| / 2pi``.

    The distribution function is taken from the boundary rule used by
    :func:`hp_norm`; the supremum over the resulting step function is
    attained as ``lambda`` increases to a sample value, so it is evaluated
    exactly at every sample rather than on a lambda grid.
    """
    cfg = _cfg(cfg)
    _check_open_unit("p", p)
    if B.degree == 0:
        return 0.0
    _, th, w, vals = _boundary_rule(B, p, cfg)
    bd = vals ** (1.0 / p)
    order = np.argsort(-bd, kind="stable")
    tail = np.cumsum(w[order]) / (2 * np.pi)
    return float(np.max(bd[order] ** p * tail))


# ---------------------------------------------------------------------------
# area integrals over circles
# ---------------------------------------------------------------------------

def _circle_integrals(B: BlaschkeProduct, radii, q: float, cfg) -> np.ndarray:
    """``int_0^{2pi} |B'(r e^{it})|^q dt`` for each radius (fixed rules)."""
    pts = B.zeros.points
    nodes, owners, weights = [], [], []
    for i, r in enumerate(radii):
        th, w = quad.panel_rule(quad.circle_edges(pts, r, cfg.area_angular_panels),
                                cfg.gl_order)
        nodes.append(r * np.exp(1j * th))
        weights.append(w)
        owners.append(np.full(th.size, i))
    z = np.concatenate(nodes)
    vals = np.abs(derivative(B, z)) ** q * np.concatenate(weights)
    return np.bincount(np.concatenate(owners), weights=vals, minlength=len(radii))


def _weight_exponent_guard(e):
    if e <= -1:
        raise ParameterError(f"radial weight exponent {e} <= -1: the integral diverges")


def besov_norm(B: BlaschkeProduct, q: float, s: float,
               cfg: Optional[QuadratureConfig] = None) -> float:
    """``(int_D |B'|^q (1-|z|)^((1-s)q-1) dm)^(1/q)``.

    Polar quadrature: Gauss-Legendre on the dyadic radial panels crossed with
    graded circle rules; the strip ``1 - r < 2^-radial_levels`` uses boundary
    values of ``|B'|``.
    """
    cfg = _cfg(cfg)
    if q <= 0:
        raise ParameterError("q must be positive")
    _check_open_unit("s", s)
    e = (1.0 - s) * q - 1.0
    _weight_exponent_guard(e)
    if B.degree == 0:
        return 0.0
    t, wt, t_tail = quad.dyadic_radial_rule(cfg.radial_levels, cfg.gl_order)
    circ = _circle_integrals(B, 1.0 - t, q, cfg)
    body = float(np.sum(wt * (1.0 - t) * t ** e * circ))
    edge = 2 * np.pi * boundary_mean(B, q, cfg)
    total = body + edge * t_tail ** (e + 1) / (e + 1)
    return total ** (1.0 / q)


def mixed_besov_norm(B: BlaschkeProduct, p: float, q: float, alpha: float,
                     cfg: Optional[QuadratureConfig] = None) -> float:
    """``(int_0^1 M_p(r, B')^q (1-r)^((1-alpha)q-1) dr)^(1/q)``."""
    cfg = _cfg(cfg)
    if p <= 0 or q <= 0:
        raise ParameterError("p and q must be positive")
    _check_open_unit("alpha", alpha)
    e = (1.0 - alpha) * q - 1.0
    _weight_exponent_guard(e)
    if B.degree == 0:
        return 0.0
    t, wt, t_tail = quad.dyadic_radial_rule(cfg.radial_levels, cfg.gl_order)
    means = (_circle_integrals(B, 1.0 - t, p, cfg) / (2 * np.pi)) ** (1.0 / p)
    body = float(np.sum(wt * t ** e * means ** q))
    edge = boundary_mean(B, p, cfg) ** (q / p)
    total = body + edge * t_tail ** (e + 1) / (e + 1)
    return total ** (1.0 / q)


def _radial_antiderivative(t, p):
    """Antiderivative of ``(1 - t) t^(-1-p)``."""
    return -(t ** -p) / p - t ** (1.0 - p) / (1.0 - p)


def annulus_weight(r0, r1, p):
    """``int_{r0}^{r1} r (1-r)^(-1-p) dr`` in closed form (arrays allowed)."""
    t0 = 1.0 - np.asarray(r0, dtype=float)
    t1 = 1.0 - np.asarray(r1, dtype=float)
    return _radial_antiderivative(t0, p) - _radial_antiderivative(t1, p)


def carleson_integral(B: BlaschkeProduct, p: float,
                      cfg: Optional[QuadratureConfig] = None) -> float:
    """``int_D log(1/|B|) (1-|z|)^(-1-p) dm``.

    The circle mean of ``log(1/|phi_a|)`` at radius ``r`` is
    ``log(1/max(r, |a|))`` (Jensen), which turns the area integral into a
    sum of one-dimensional radial integrals, one per zero. The remaining
    integral ``int_0^{1-|a|} (1-t) log(1/(1-t)) t^(-1-p) dt`` is done with
    Gauss-Legendre on geometric panels toward ``t = 0`` plus the leading
    ``t^(-p)`` term on the last strip.
    """
    cfg = _cfg(cfg)
    _check_open_unit("p", p)
    if B.degree == 0:
        return 0.0
    a = np.abs(B.zeros.points)
    m = B.zeros.mult.astype(float)
    ta = 1.0 - a
    with np.errstate(divide="ignore", invalid="ignore"):
        inner = np.where(a > 0, -np.log(np.where(a > 0, a, 1.0)) * annulus_weight(0.0, a, p), 0.0)
    x, w = quad.gauss_legendre(cfg.gl_order)
    L = cfg.radial_levels
    # t in (0, min(ta, 1/2)]: geometric panels toward the t^(-1-p) singularity
    t_top = np.minimum(ta, 0.5)
    hi = t_top[:, None] * 2.0 ** -np.arange(L)[None, :]
    lo = hi / 2
    half = (hi - lo) / 2
    tt = lo[..., None] + half[..., None] * (x + 1.0)
    f = (1.0 - tt) * -np.log1p(-tt) * tt ** (-1.0 - p)
    outer = np.sum(half[..., None] * w * f, axis=(1, 2))
    outer += (t_top * 2.0 ** -float(L)) ** (1.0 - p) / (1.0 - p)
    # t in [1/2, ta] for |a| < 1/2: in u = 1 - t the log(1/u) singularity sits at u = 0
    for i in np.flatnonzero(ta > 0.5):
        u_hi = 0.5 * 2.0 ** -np.arange(L)
        u_lo = np.maximum(u_hi / 2, a[i])
        keep = u_hi > a[i]
        u_hi, u_lo = u_hi[keep], u_lo[keep]
        hu = (u_hi - u_lo) / 2
        uu = u_lo[:, None] + hu[:, None] * (x + 1.0)
        g = uu * -np.log(uu) * (1.0 - uu) ** (-1.0 - p)
        outer[i] += float(np.sum(hu[:, None] * w * g))
        u_end = u_lo[-1] if u_lo.size else 0.5
        if a[i] < u_end:
            # remaining [|a|, u_end] where (1-u)^(-1-p) = 1 to within u_end
            prim = lambda u: 0.0 if u == 0 else u * u * (0.25 - 0.5 * math.log(u))
            outer[i] += prim(u_end) - prim(a[i])
    return float(2 * np.pi * np.sum(m * (inner + outer)))


# ---------------------------------------------------------------------------
# sublevel sets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Enclosure:
    """Certified bounds ``lower <= I <= upper`` for a sublevel integral."""

    lower: float
    upper: float
    cells: int = 0

    @property
    def value(self) -> float:
        return 0.5 * (self.lower + self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __float__(self):
        return self.value


_MAX_SECTOR_LEVEL = 64


def _angular_gap(phi, lo, hi):
    """Angular distance from ``phi`` to the arc ``[lo, hi]`` (hi - lo <= 2pi)."""
    d = np.mod(phi - lo, 2 * np.pi)
    span = hi - lo
    outside = d > span
    gap = np.where(outside, np.minimum(d - span, 2 * np.pi - d), 0.0)
    return gap


def _dist_to_sector(a, lo, hi, r0):
    """Euclidean distance from points ``a`` (K,) to polar boxes (S,) ``r in [r0, 1]``."""
    ra = np.abs(a)[None, :]
    phi = np.angle(a)[None, :]
    lo = lo[:, None]
    hi = hi[:, None]
    r0 = r0[:, None]
    gap = _angular_gap(phi, lo, hi)
    inside = gap == 0
    radial = np.maximum(r0 - ra, 0.0)
    best = np.full(np.broadcast_shapes(ra.shape, lo.shape), np.inf)
    for edge in (lo, hi):
        s = np.clip(ra * np.cos(phi - edge), r0, 1.0)
        d = np.abs(ra * np.exp(1j * phi) - s * np.exp(1j * edge))
        best = np.minimum(best, d)
    return np.where(inside, radial, best)


def _sector_certified_out(zeros: ZeroList, level: int, index: np.ndarray, log_inv_c: float):
    """True where ``|B| >= c`` is certified on the whole sector."""
    ell = 2.0 ** (1 - level)
    lo = (index - 1) * 2 * np.pi * ell
    hi = index * 2 * np.pi * ell
    r0 = np.full(index.shape, 1.0 - ell)
    a = zeros.points
    ta = 1.0 - np.abs(a)
    out = np.zeros(index.shape, dtype=bool)
    step = max(1, (1 << 20) // max(a.size, 1))
    for s in range(0, index.size, step):
        sl = slice(s, s + step)
        dist = _dist_to_sector(a, lo[sl], hi[sl], r0[sl])
        den = np.maximum(dist, ta[None, :]) ** 2
        x = 2.0 * ell * (1.0 - np.abs(a) ** 2)[None, :] / den
        ok = np.all(x < 1.0, axis=1)
        with np.errstate(invalid="ignore", divide="ignore"):
            bound = (-0.5 * np.log1p(-np.minimum(x, 1.0 - 1e-300))) @ zeros.mult
        out[sl] = ok & (bound <= log_inv_c)
    return out


def _initial_cells(zeros: ZeroList, c: float):
    """Whitney cells (top parts of dyadic sectors) not certified to lie in {|B| >= c}."""
    log_inv_c = -math.log(c)
    cells = []
    # level-1 top part: the disc |z| < 1/2
    n_ang, n_rad = 16, 2
    ang = np.linspace(0, 2 * np.pi, n_ang + 1)
    rad = np.linspace(0.0, 0.5, n_rad + 1)
    cells.append(_grid_cells(rad, ang))
    index = np.array([1, 2])
    level = 2
    while index.size:
        if level > _MAX_SECTOR_LEVEL:
            raise NumericalError("sector descent did not terminate")
        keep = ~_sector_certified_out(zeros, level, index, log_inv_c)
        index = index[keep]
        if index.size == 0:
            break
        ell = 2.0 ** (1 - level)
        lo = (index - 1) * 2 * np.pi * ell
        frac = np.linspace(0, 1, n_ang + 1)
        r_edges = np.linspace(1.0 - ell, 1.0 - ell / 2, n_rad + 1)
        for k in range(n_ang):
            th0 = lo + frac[k] * 2 * np.pi * ell
            th1 = lo + frac[k + 1] * 2 * np.pi * ell
            for i in range(n_rad):
                cells.append(np.stack([np.full(index.size, r_edges[i]),
                                       np.full(index.size, r_edges[i + 1]), th0, th1], axis=1))
        index = np.concatenate([2 * index - 1, 2 * index])
        level += 1
    return np.concatenate(cells, axis=0)


def _grid_cells(rad, ang):
    R0, T0 = np.meshgrid(rad[:-1], ang[:-1], indexing="ij")
    R1, T1 = np.meshgrid(rad[1:], ang[1:], indexing="ij")
    return np.stack([R0.ravel(), R1.ravel(), T0.ravel(), T1.ravel()], axis=1)


def _pseudo_radius(cells):
    r0, r1, t0, t1 = cells.T
    rm = 0.5 * (r0 + r1)
    half_diag = np.hypot(0.5 * (r1 - r0), 0.5 * r1 * (t1 - t0))
    return half_diag / (1.0 - rm * r1)


def sublevel_enclosure(B: BlaschkeProduct, c: float, p: float,
                       cfg: Optional[QuadratureConfig] = None) -> Enclosure:
    """Certified enclosure of ``I(c) = int_{|B|<c} (1-|z|)^(-1-p) dm``.

    Dyadic sectors on which ``|B| >= c`` can be certified from the zero
    locations are discarded; the top parts of the others are cut into
    polar cells. A cell with centre ``w`` and pseudo-hyperbolic radius
    ``rho`` is classified with Schwarz-Pick: ``|B|`` stays within
    ``[(b-rho)/(1-rho b), (b+rho)/(1+rho b)]``, ``b = |B(w)|``. Undecided
    cells are split into four down to ``cfg.refinement_depth``; those still
    undecided count toward the upper bound only.
    """
    cfg = _cfg(cfg)
    _check_open_unit("c", c)
    _check_open_unit("p", p)
    if B.degree == 0:
        return Enclosure(0.0, 0.0)
    cells = _initial_cells(B.zeros, c)
    lower = 0.0
    unresolved = 0.0
    count = 0
    for depth in range(cfg.refinement_depth + 1):
        if cells.shape[0] == 0:
            break
        count += cells.shape[0]
        r0, r1, t0, t1 = cells.T
        centre = 0.5 * (r0 + r1) * np.exp(0.5j * (t0 + t1))
        b = np.exp(log_modulus(B, centre))
        rho = _pseudo_radius(cells)
        with np.errstate(divide="ignore", invalid="ignore"):
            up = np.where(rho < 1, (b + rho) / (1 + rho * b), 1.0)
            lo = np.where(rho < 1, (b - rho) / (1 - rho * b), -1.0)
        inside = up < c
        outside = lo >= c
        weight = (t1 - t0) * annulus_weight(r0, r1, p)
        lower += math.fsum(weight[inside].tolist())
        open_ = ~(inside | outside)
        if depth == cfg.refinement_depth:
            unresolved += math.fsum(weight[open_].tolist())
            break
        cells = _quadsplit(cells[open_])
    return Enclosure(lower, lower + unresolved, count)


def _quadsplit(cells):
    r0, r1, t0, t1 = cells.T
    rm = 0.5 * (r0 + r1)
    tm = 0.5 * (t0 + t1)
    return np.concatenate([
        np.stack([r0, rm, t0, tm], axis=1),
        np.stack([r0, rm, tm, t1], axis=1),
        np.stack([rm, r1, t0, tm], axis=1),
        np.stack([rm, r1, tm, t1], axis=1),
    ])


def sublevel_integral(B: BlaschkeProduct, c: float, p: float,
                      cfg: Optional[QuadratureConfig] = None, *, strict: bool = True) -> float:
    """Midpoint of :func:`sublevel_enclosure`.

    Raises
    ------
    EnclosureError
        With ``strict`` set, when the enclosure is wider than ``cfg.rel_tol``
        times its midpoint (typically ``c`` close to a critical value of ``|B|``).
    """
    cfg = _cfg(cfg)
    enc = sublevel_enclosure(B, c, p, cfg)
    if strict and enc.width > cfg.rel_tol * enc.value:
        raise EnclosureError(
            f"sublevel enclosure [{enc.lower:.6g}, {enc.upper:.6g}] wider than "
            f"rel_tol={cfg.rel_tol} after depth {cfg.refinement_depth}")
    return enc.value


# ---------------------------------------------------------------------------
# report
# ---------------------------------------------------------------------------

@dataclass
class NormReport:
    """Flat record of the integral functionals at one parameter set."""

    p: float
    c: float
    alpha: Optional[float] = None
    hp_norm: float = float("nan")
    besov_q1_sp: float = float("nan")
    sublevel_Ic: float = float("nan")
    sublevel_width: float = float("nan")
    carleson_log: float = float("nan")
    cone_norm: Optional[float] = None
    weak_hp: float = float("nan")
    errors: dict = field(default_factory=dict)

    @classmethod
    def columns(cls) -> list[str]:
        return [f.name for f in fields(cls) if f.name != "errors"]

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schema_version"] = SCHEMA_VERSION
        return d

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)

    def csv_row(self) -> str:
        buf = io.StringIO()
        csv.writer(buf, lineterminator="\n").writerow(
            [getattr(self, c) for c in self.columns()])
        return buf.getvalue()


def _guarded(report, errors, name, fn):
    try:
        return fn()
    except NumericalError as exc:
        errors[name] = f"{type(exc).__name__}: {exc}"
        return float("nan")


def norm_report(B: BlaschkeProduct, p: float, c: float = 0.5,
                cfg: Optional[QuadratureConfig] = None, *, alpha: Optional[float] = None,
                strict: bool = True) -> NormReport:
    """All functionals of this module; numerical failures are recorded, not raised."""
    cfg = _cfg(cfg)
    rep = NormReport(p=p, c=c, alpha=alpha)
    err = rep.errors
    rep.hp_norm = _guarded(rep, err, "hp_norm", lambda: hp_norm(B, p, cfg))
    rep.besov_q1_sp = _guarded(rep, err, "besov_q1_sp", lambda: besov_norm(B, 1.0, p, cfg))

    def _sub():
        enc = sublevel_enclosure(B, c, p, cfg)
        rep.sublevel_width = enc.width
        if strict and enc.width > cfg.rel_tol * enc.value:
            raise EnclosureError(f"enclosure width {enc.width:.3g} at value {enc.value:.3g}")
        return enc.value

    rep.sublevel_Ic = _guarded(rep, err, "sublevel_Ic", _sub)
    rep.carleson_log = _guarded(rep, err, "carleson_log", lambda: carleson_integral(B, p, cfg))
    rep.weak_hp = _guarded(rep, err, "weak_hp", lambda: weak_hp_quasinorm(B, p, cfg))
    return rep
