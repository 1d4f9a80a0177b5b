"""Finite Blaschke products: construction, pointwise evaluation and disc geometry.

A product is stored as a list of distinct zeros with multiplicities and a
unimodular constant ``u``::

    B(z) = u * prod_n ((z_n - z) / (1 - conj(z_n) z)) ** m_n

With the default constant ``u = prod_n (|z_n| / z_n) ** m_n`` (and the
factor taken as 1 for a zero at the origin) this is the usual normalised
Blaschke product, so a single zero at 0 gives ``B(z) = -z``.

Everything here is an exact formula; numerical integration lives in
:mod:`blaschke_hp.norms`.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from . import _kernels
from .exceptions import DiskDomainError, ParameterError, RootResidualError

MAX_DEGREE = 4096
ROOT_TOL = 1e-10
UNIMODULAR_TOL = 1e-14


def canonical_angle(theta):
    """Reduce angles to the representative in ``[0, 2*pi)``."""
    t = np.mod(theta, 2 * np.pi)
    # np.mod can round up to exactly 2*pi for tiny negative inputs
    t = np.where(t >= 2 * np.pi, 0.0, t)
    if np.ndim(t) == 0:
        return float(t)
    return t


def _readonly(a):
    a = np.array(a)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class ZeroList:
    """Distinct disc points with positive integer multiplicities.

    Parameters
    ----------
    points : array_like of complex
        Pairwise distinct points with ``|z| < 1``.
    mult : array_like of int, optional
        Multiplicities (default all ones).
    max_degree : int
        Upper bound (exclusive) on the total degree.
    """

    points: np.ndarray
    mult: np.ndarray = None
    max_degree: int = MAX_DEGREE

    def __post_init__(self):
        pts = np.atleast_1d(np.asarray(self.points, dtype=complex)).ravel()
        if self.mult is None:
            m = np.ones(pts.shape, dtype=np.int64)
        else:
            m = np.atleast_1d(np.asarray(self.mult)).ravel()
            if m.shape != pts.shape:
                raise ParameterError("points and mult must have the same length")
            if not np.all(np.equal(np.mod(m, 1), 0)):
                raise ParameterError("multiplicities must be integers")
            m = m.astype(np.int64)
        if np.any(m < 1):
            raise ParameterError("multiplicities must be >= 1")
        if not np.all(np.isfinite(pts)):
            raise DiskDomainError("zeros must be finite complex numbers")
        if pts.size and np.max(np.abs(pts)) >= 1.0:
            raise DiskDomainError("every zero must satisfy |z| < 1")
        if len(np.unique(pts)) != pts.size:
            raise ParameterError(
                "points must be distinct; express repetition through mult "
                "(see ZeroList.from_points)")
        if int(m.sum()) >= self.max_degree:
            raise ParameterError(
                f"total degree {int(m.sum())} exceeds the cap {self.max_degree}")
        object.__setattr__(self, "points", _readonly(pts))
        object.__setattr__(self, "mult", _readonly(m))

    @classmethod
    def from_points(cls, points: Iterable[complex], max_degree: int = MAX_DEGREE):
        """Build a list from a sequence in which zeros may repeat."""
        pts = list(np.asarray(list(points), dtype=complex).ravel())
        order: dict[complex, int] = {}
        for z in pts:
            order[complex(z)] = order.get(complex(z), 0) + 1
        return cls(np.array(list(order.keys()), dtype=complex),
                   np.array(list(order.values()), dtype=np.int64), max_degree)

    @classmethod
    def empty(cls) -> "ZeroList":
        return cls(np.zeros(0, dtype=complex))

    @property
    def degree(self) -> int:
        return int(self.mult.sum())

    def __len__(self):
        return self.points.size

    def __iter__(self):
        return iter(zip(self.points.tolist(), self.mult.tolist()))

    def __eq__(self, other):
        if not isinstance(other, ZeroList):
            return NotImplemented
        return (np.array_equal(self.points, other.points)
                and np.array_equal(self.mult, other.mult))

    def __hash__(self):
        return hash((self.points.tobytes(), self.mult.tobytes()))

    def __repr__(self):
        return f"ZeroList(distinct={len(self)}, degree={self.degree})"

    def expanded(self) -> np.ndarray:
        """Zeros repeated according to multiplicity."""
        return np.repeat(self.points, self.mult)

    def union(self, other: "ZeroList") -> "ZeroList":
        return ZeroList.from_points(np.concatenate([self.expanded(), other.expanded()]),
                                    max(self.max_degree, other.max_degree))

    def scaled_multiplicity(self, k: int) -> "ZeroList":
        return ZeroList(self.points, self.mult * int(k), self.max_degree)

    # -- interchange ---------------------------------------------------------
    def to_dict(self) -> dict:
        return {"zeros": [{"re": float(z.real), "im": float(z.imag), "mult": int(m)}
                          for z, m in self]}

    @classmethod
    def from_dict(cls, data: dict) -> "ZeroList":
        try:
            entries = data["zeros"]
            pts = [complex(float(e["re"]), float(e["im"])) for e in entries]
            mult = [int(e.get("mult", 1)) for e in entries]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParameterError(f"malformed ZeroList JSON: {exc}") from exc
        return cls(np.array(pts, dtype=complex), np.array(mult, dtype=np.int64))


def default_unimodular(zeros: ZeroList) -> complex:
    """The normalising constant ``prod (|z_n|/z_n)**m_n`` with ``|0|/0 := 1``."""
    pts = zeros.points
    nz = pts != 0
    if not np.any(nz):
        return 1.0 + 0.0j
    angles = -np.angle(pts[nz]) * zeros.mult[nz]
    total = math.fsum(angles.tolist())
    return complex(np.exp(1j * total))


@dataclass(frozen=True, eq=False)
class BlaschkeProduct:
    """A finite Blaschke product ``u * prod phi_n ** m_n``.

    Use :func:`make_product` to get the default normalisation.
    """

    zeros: ZeroList
    unimodular: complex = None

    def __post_init__(self):
        u = default_unimodular(self.zeros) if self.unimodular is None else complex(self.unimodular)
        if abs(abs(u) - 1.0) > UNIMODULAR_TOL:
            raise ParameterError(f"unimodular factor has modulus {abs(u)!r}, not 1")
        object.__setattr__(self, "unimodular", u)

    @property
    def degree(self) -> int:
        return self.zeros.degree

    def __call__(self, z):
        return evaluate(self, z)

    def __repr__(self):
        return f"BlaschkeProduct(degree={self.degree}, unimodular={self.unimodular:.6g})"

    def to_dict(self) -> dict:
        d = self.zeros.to_dict()
        d["unimodular"] = {"re": self.unimodular.real, "im": self.unimodular.imag}
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "BlaschkeProduct":
        zl = ZeroList.from_dict(data)
        u = data.get("unimodular")
        if u is None:
            return cls(zl)
        return cls(zl, complex(float(u["re"]), float(u["im"])))


def make_product(zeros, *, allow_constant: bool = False) -> BlaschkeProduct:
    """Blaschke product with the default normalisation.

    Parameters
    ----------
    zeros : ZeroList or sequence of complex
        Zeros; a plain sequence may contain repeats.
    allow_constant : bool
        An empty zero list is rejected unless this is set, in which case the
        constant product 1 is returned.

    Examples
    --------
    >>> B = make_product([0j])
    >>> complex(B(0.5))
    (-0.5+0j)
    """
    if not isinstance(zeros, ZeroList):
        zeros = ZeroList.from_points(zeros)
    if zeros.degree == 0 and not allow_constant:
        raise ParameterError("empty zero list; pass allow_constant=True for B = 1")
    return BlaschkeProduct(zeros)


def read_zero_list(path) -> ZeroList:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"{path}: not valid JSON ({exc})") from exc
    return ZeroList.from_dict(data)


def read_product(path) -> BlaschkeProduct:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParameterError(f"{path}: not valid JSON ({exc})") from exc
    return BlaschkeProduct.from_dict(data)


# ---------------------------------------------------------------------------
# pointwise evaluation
# ---------------------------------------------------------------------------

def _as_points(z, closed: bool):
    z = np.asarray(z, dtype=complex)
    r = np.abs(z)
    bad = r > 1.0 + 1e-12 if closed else r >= 1.0
    if np.any(bad):
        where = "closed" if closed else "open"
        raise DiskDomainError(f"evaluation points must lie in the {where} unit disc")
    return z


def _eval_flat(B: BlaschkeProduct, z: np.ndarray, want_derivative: bool):
    z = np.ascontiguousarray(z, dtype=complex)
    if B.zeros.points.size == 0:
        return np.full(z.shape, B.unimodular), np.zeros(z.shape, dtype=complex)
    return _kernels.value_and_derivative(B.zeros.points, B.zeros.mult, B.unimodular,
                                         z, want_derivative)


def evaluate(B: BlaschkeProduct, z):
    """Value of ``B`` at points of the closed disc (scalar or array)."""
    z = _as_points(z, closed=True)
    val, _ = _eval_flat(B, z.ravel(), False)
    out = val.reshape(z.shape)
    return complex(out) if out.ndim == 0 else out


def derivative(B: BlaschkeProduct, z):
    """``B'(z)`` for ``|z| < 1``.

    Away from the zeros this is ``B(z)`` times the logarithmic derivative
    ``-sum m_n (1-|z_n|^2) / ((z_n - z)(1 - conj(z_n) z))``. At a simple zero
    the vanishing factor is differentiated analytically; at a multiple zero
    the derivative is 0.
    """
    z = _as_points(z, closed=False)
    _, der = _eval_flat(B, z.ravel(), True)
    out = der.reshape(z.shape)
    return complex(out) if out.ndim == 0 else out


def value_and_derivative(B: BlaschkeProduct, z):
    z = _as_points(z, closed=False)
    val, der = _eval_flat(B, z.ravel(), True)
    return val.reshape(z.shape), der.reshape(z.shape)


def log_modulus(B: BlaschkeProduct, z):
    """``log|B(z)|`` accumulated factor by factor (no underflow)."""
    z = _as_points(z, closed=True)
    flat = np.ascontiguousarray(z.ravel())
    if B.zeros.points.size == 0:
        out = np.zeros(flat.shape)
    else:
        out = _kernels.log_modulus(B.zeros.points, B.zeros.mult, flat)
    out = out.reshape(z.shape)
    return float(out) if out.ndim == 0 else out


def _poisson_weights(zeros: ZeroList):
    a = zeros.points
    return zeros.mult * (1.0 - (a.real ** 2 + a.imag ** 2))


def boundary_derivative(B, theta):
    """Modulus of the angular derivative, ``sum_n m_n P_{z_n}(theta)``.

    ``P_a(theta) = (1 - |a|^2) / |a - e^{i theta}|^2`` is the Poisson kernel.
    For finite products the sum is always finite.
    """
    zeros = B.zeros if isinstance(B, BlaschkeProduct) else B
    theta = np.asarray(theta, dtype=float)
    flat = np.ascontiguousarray(theta.ravel())
    if zeros.points.size == 0:
        out = np.zeros(flat.shape)
    else:
        out = _kernels.poisson_sum(zeros.points, _poisson_weights(zeros), flat)
    out = out.reshape(theta.shape)
    return float(out) if out.ndim == 0 else out


def derivative_bound(B, z):
    """Upper bound ``sum_n m_n (1-|z_n|^2) / |1 - conj(z_n) z|^2 >= |B'(z)|``."""
    zeros = B.zeros if isinstance(B, BlaschkeProduct) else B
    z = _as_points(z, closed=False)
    flat = np.ascontiguousarray(z.ravel())
    if zeros.points.size == 0:
        out = np.zeros(flat.shape)
    else:
        out = _kernels.kernel_bound(zeros.points, _poisson_weights(zeros), flat)
    out = out.reshape(z.shape)
    return float(out) if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# disc geometry
# ---------------------------------------------------------------------------

def pseudo_distance(z, w):
    """Pseudo-hyperbolic distance ``|z - w| / |1 - conj(z) w|``."""
    z = _as_points(z, closed=False)
    w = _as_points(w, closed=False)
    out = np.abs(z - w) / np.abs(1.0 - np.conj(z) * w)
    return float(out) if np.ndim(out) == 0 else out


def mobius_shift(a, w):
    """Disc automorphism ``tau_a(w) = (a - w) / (1 - conj(a) w)``; an involution."""
    a = complex(a)
    if abs(a) >= 1:
        raise DiskDomainError("|a| must be < 1")
    w = _as_points(w, closed=True)
    out = (a - w) / (1.0 - np.conj(a) * w)
    return complex(out) if np.ndim(out) == 0 else out


def _poly_from_factors(factors):
    """Coefficients (lowest degree first) of a product of linear factors.

    ``factors`` is an ``(n, 2)`` array of ``(c0, c1)`` for ``c0 + c1 x``.
    """
    coeffs = np.array([1.0 + 0j])
    for c in factors:
        coeffs = np.convolve(coeffs, c)
    return coeffs


def frostman_shift(B: BlaschkeProduct, a, *, root_tol: float = ROOT_TOL,
                   newton_steps: int = 8) -> BlaschkeProduct:
    """The Blaschke product ``tau_a o B = (a - B) / (1 - conj(a) B)``.

    Its zeros are the ``n = deg B`` solutions of ``B(z) = a``. They are found
    as roots of ``u P(z) - a Q(z)`` where ``B = u P / Q`` (companion matrix
    eigenvalues), then polished with Newton steps on ``B(z) - a``.

    Raises
    ------
    RootResidualError
        If some polished root has ``|B(z) - a| > root_tol`` or leaves the disc.
    """
    a = complex(a)
    if abs(a) >= 1:
        raise DiskDomainError("|a| must be < 1")
    n = B.degree
    if n == 0:
        raise ParameterError("frostman_shift needs a product of degree >= 1")
    zs = B.zeros.expanded()
    # B = u P / Q with P = prod (z_n - z), Q = prod (1 - conj(z_n) z)
    num = _poly_from_factors(np.stack([zs, -np.ones_like(zs)], axis=1))
    den = _poly_from_factors(np.stack([np.ones_like(zs), -np.conj(zs)], axis=1))
    coeffs = B.unimodular * num - a * den
    roots = np.roots(coeffs[::-1])
    if roots.size != n:
        raise RootResidualError(f"expected {n} preimages, found {roots.size}")
    for _ in range(newton_steps):
        inside = np.abs(roots) < 1
        if not np.all(inside):
            roots = np.where(inside, roots, roots / np.abs(roots) * (1 - 1e-12))
        val, der = value_and_derivative(B, roots)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = np.where(der != 0, (val - a) / der, 0)
        cand = roots - step
        ok = np.isfinite(cand) & (np.abs(cand) < 1)
        # keep a Newton step only where it reduces the residual
        cand_res = np.full(roots.shape, np.inf)
        if np.any(ok):
            cand_res[ok] = np.abs(evaluate(B, cand[ok]) - a)
        cur_res = np.abs(val - a)
        better = ok & (cand_res <= cur_res)
        roots = np.where(better, cand, roots)
        if np.all(np.abs(step) < 1e-16):
            break
    if np.any(np.abs(roots) >= 1):
        raise RootResidualError("a computed preimage left the unit disc")
    residual = np.abs(evaluate(B, roots) - a)
    if np.max(residual) > root_tol:
        raise RootResidualError(
            f"preimage residual {np.max(residual):.3e} exceeds {root_tol:.1e}")
    zl = ZeroList.from_points(roots, max_degree=B.zeros.max_degree)
    # choose u' so that the new product equals tau_a o B identically
    probe = _probe_point(zl.points)
    target = mobius_shift(a, evaluate(B, probe))
    plain = evaluate(BlaschkeProduct(zl, 1.0), probe)
    u = target / plain
    return BlaschkeProduct(zl, u / abs(u))


def _probe_point(points):
    for z0 in (0.0, 0.5j, -0.5, 0.5, -0.5j, 0.25 + 0.25j):
        if points.size == 0 or np.min(np.abs(points - z0)) > 1e-3:
            return complex(z0)
    return complex(0.123 - 0.456j)


def preimages(B: BlaschkeProduct, a, **kw) -> np.ndarray:
    """All solutions of ``B(z) = a``, repeated by multiplicity."""
    return frostman_shift(B, a, **kw).zeros.expanded()
