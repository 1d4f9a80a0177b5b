"""Dyadic sectors of the disc and the counting functionals built on them.

A sector at level ``n >= 1`` with index ``1 <= j <= 2^(n-1)`` sits over the
arc ``(j-1) 2pi l <= theta < j 2pi l`` with normalised length
``l = 2^(1-n)``. Its top part is ``1 - l <= |z| < 1 - l/2``, so level ``n``
collects the zeros with ``2^-n < 1 - |z| <= 2^(1-n)``. Level 1 is the disc
``|z| < 1/2``; it takes part in the partition of the zeros but not in any
of the sums below.

All counts and densities are integers scaled by powers of two, so every
comparison against ``2^N`` is exact.
"""
from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field
from functools import total_ordering
from typing import Optional

import numpy as np

from .core import ZeroList, pseudo_distance
from .exceptions import DepthWarning, ParameterError, TruncationWarning

MAX_TREE_LEVEL = 40
DEFAULT_MAX_LEVEL = 30
SCHEMA_VERSION = 1
TWO_PI = 2.0 * math.pi
# rounding slack, in ulps of |z|, when comparing a modulus with a dyadic radius
_EDGE_ULPS = 4


@total_ordering
@dataclass(frozen=True)
class DyadicSector:
    """Sector ``Q`` at ``level`` over the ``index``-th dyadic arc."""

    level: int
    index: int

    def __post_init__(self):
        if self.level < 1:
            raise ParameterError(f"sector level must be >= 1, got {self.level}")
        if not 1 <= self.index <= self.count_at(self.level):
            raise ParameterError(
                f"index {self.index} outside [1, {self.count_at(self.level)}] at level {self.level}")

    @staticmethod
    def count_at(level: int) -> int:
        return 1 << (level - 1)

    def __lt__(self, other):
        return (self.level, self.index) < (other.level, other.index)

    @property
    def length(self) -> float:
        """Normalised arc length ``l(Q) = 2^(1-n)``."""
        return 2.0 ** (1 - self.level)

    @property
    def arc(self) -> tuple[float, float]:
        ell = self.length
        return ((self.index - 1) * TWO_PI * ell, self.index * TWO_PI * ell)

    @property
    def top_radii(self) -> tuple[float, float]:
        """``[r0, r1)`` of the top part."""
        ell = self.length
        return (1.0 - ell, 1.0 - ell / 2)

    @property
    def centre(self) -> complex:
        """Centre of the top part, ``r = 1 - 3l/4``."""
        ell = self.length
        return (1.0 - 0.75 * ell) * complex(math.cos((self.index - 0.5) * TWO_PI * ell),
                                            math.sin((self.index - 0.5) * TWO_PI * ell))

    @property
    def parent(self) -> Optional["DyadicSector"]:
        if self.level == 1:
            return None
        return DyadicSector(self.level - 1, (self.index + 1) // 2)

    def children(self) -> tuple["DyadicSector", "DyadicSector"]:
        return (DyadicSector(self.level + 1, 2 * self.index - 1),
                DyadicSector(self.level + 1, 2 * self.index))

    def ancestor(self, level: int) -> "DyadicSector":
        if level > self.level:
            raise ParameterError("ancestor level below the sector")
        return DyadicSector(level, ((self.index - 1) >> (self.level - level)) + 1)

    def contains(self, other: "DyadicSector") -> bool:
        """True if ``other``'s arc lies inside this sector's arc."""
        return other.level >= self.level and other.ancestor(self.level) == self

    def tripled(self) -> tuple["DyadicSector", ...]:
        """Same-level sectors whose arcs make up ``3Q`` (wrapping around angle 0)."""
        c = self.count_at(self.level)
        idx = {self.index, (self.index - 2) % c + 1, self.index % c + 1}
        return tuple(DyadicSector(self.level, j) for j in sorted(idx))

    def to_dict(self) -> dict:
        return {"level": self.level, "index": self.index}


def locate(z) -> tuple[np.ndarray, np.ndarray]:
    """Level and index of the top part containing each point of ``z``."""
    z = np.atleast_1d(np.asarray(z, dtype=complex))
    r = np.abs(z)
    t = 1.0 - r
    if np.any(t <= 0):
        raise ParameterError("points must lie in the open unit disc")
    mant, expo = np.frexp(t)
    # a modulus within a few ulps above a band edge 1 - 2^(1-n) is taken to be on it
    on_edge = (t - np.ldexp(0.5, expo)) <= _EDGE_ULPS * np.spacing(r)
    level = np.where(on_edge, 2 - expo, 1 - expo).astype(np.int64)
    u = np.mod(np.angle(z), TWO_PI) / TWO_PI
    per = np.ldexp(1.0, (level - 1).astype(int))
    index = np.minimum(np.floor(u * per).astype(np.int64) + 1, per.astype(np.int64))
    return level, index


@dataclass
class DyadicTree:
    """Sparse map ``(level, index) -> N(Q)``.

    Occupied sectors and all their ancestors are stored. Zeros whose level
    exceeds ``max_level`` are counted in ``deep`` instead.
    """

    max_level: int
    counts: dict = field(default_factory=dict)
    deep: int = 0

    def N(self, Q: DyadicSector) -> int:
        return self.counts.get((Q.level, Q.index), 0)

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def sectors(self) -> list[DyadicSector]:
        return [DyadicSector(*k) for k in sorted(self.counts)]

    def occupied(self, min_level: int = 1) -> list[DyadicSector]:
        return [DyadicSector(*k) for k, v in sorted(self.counts.items())
                if v > 0 and k[0] >= min_level]

    def level_counts(self, level: int) -> dict:
        return {k[1]: v for k, v in self.counts.items() if k[0] == level and v > 0}

    def density(self, Q: DyadicSector) -> float:
        return sector_density(self, Q)

    def dump(self) -> dict:
        """Occupied sectors with their counts and densities."""
        return {
            "schema_version": SCHEMA_VERSION,
            "max_level": self.max_level,
            "deep": self.deep,
            "sectors": [{"level": Q.level, "index": Q.index, "N": self.N(Q),
                         "F": sector_density(self, Q)} for Q in self.occupied()],
        }

    def to_json(self, **kw) -> str:
        return json.dumps(self.dump(), **kw)

    @classmethod
    def from_dump(cls, d) -> "DyadicTree":
        tree = cls(int(d["max_level"]), {}, int(d.get("deep", 0)))
        for s in d["sectors"]:
            tree._add(DyadicSector(int(s["level"]), int(s["index"])), int(s["N"]))
        return tree

    def _add(self, Q: DyadicSector, n: int):
        key = (Q.level, Q.index)
        self.counts[key] = self.counts.get(key, 0) + n
        while Q.level > 1:
            Q = Q.parent
            self.counts.setdefault((Q.level, Q.index), 0)


def build_tree(zeros: ZeroList, max_level: int = DEFAULT_MAX_LEVEL) -> DyadicTree:
    """Assign every zero (with multiplicity) to the top part containing it.

    Warns
    -----
    DepthWarning
        When zeros lie deeper than ``max_level``; they are tallied in
        ``tree.deep`` rather than dropped.
    """
    if not 1 <= max_level <= MAX_TREE_LEVEL:
        raise ParameterError(f"max_level must lie in [1, {MAX_TREE_LEVEL}], got {max_level}")
    tree = DyadicTree(int(max_level))
    if zeros.points.size == 0:
        return tree
    level, index = locate(zeros.points)
    for n, j, m in zip(level.tolist(), index.tolist(), zeros.mult.tolist()):
        if n > max_level:
            tree.deep += m
            continue
        tree._add(DyadicSector(n, j), m)
    if tree.deep:
        warnings.warn(f"{tree.deep} zero(s) lie below level {max_level} and were not placed",
                      DepthWarning, stacklevel=2)
    return tree


def _density_int(tree: DyadicTree, Q: DyadicSector) -> int:
    # F(Q) = sum over levels 2..n of N(R) 2^(m-1), R in 3(ancestor of Q at level m)
    total = 0
    for m in range(2, Q.level + 1):
        A = Q.ancestor(m)
        for R in A.tripled():
            total += tree.N(R) << (m - 1)
    return total


def sector_density(tree: DyadicTree, Q: DyadicSector) -> float:
    """``F(Q) = sum N(R) / l(R)`` over sectors ``R`` with ``l(R) >= l(Q)`` and ``Q`` inside ``3R``.

    The level-1 sector never contributes and has ``F = 0``.
    """
    return float(_density_int(tree, Q))


@dataclass
class MaximalFamily:
    """Maximal sectors with ``F(Q) > 2^N``."""

    N: int
    sectors: list = field(default_factory=list)
    densities: list = field(default_factory=list)
    counts: list = field(default_factory=list)

    @property
    def total_length(self) -> float:
        return math.fsum(Q.length for Q in self.sectors)

    def to_dict(self) -> dict:
        return {"N": self.N,
                "sectors": [{"level": Q.level, "index": Q.index, "N": n, "F": float(f)}
                            for Q, f, n in zip(self.sectors, self.densities, self.counts)],
                "total_length": self.total_length}


def _candidates(tree: DyadicTree) -> list[DyadicSector]:
    # a maximal sector beyond level 2 gains density at its own level, so it is
    # occupied or a same-level neighbour of an occupied sector
    cand = {DyadicSector(2, 1), DyadicSector(2, 2)}
    for Q in tree.occupied(min_level=2):
        cand.update(Q.tripled())
    return sorted(cand)


def _scored_candidates(tree: DyadicTree):
    out = []
    for Q in _candidates(tree):
        f = _density_int(tree, Q)
        fp = 0 if Q.level == 2 else _density_int(tree, Q.parent)
        out.append((Q, f, fp))
    return out


def _families_from(tree, scored, N_values):
    fams = []
    for N in N_values:
        thr = 1 << N
        fam = MaximalFamily(N)
        for Q, f, fp in scored:
            if f > thr and fp <= thr:
                fam.sectors.append(Q)
                fam.densities.append(float(f))
                fam.counts.append(tree.N(Q))
        fams.append(fam)
    return fams


def maximal_families(tree: DyadicTree, N_max: int) -> list[MaximalFamily]:
    """Families ``E_N``, ``N = 1..N_max``, of maximal sectors with ``F(Q) > 2^N``.

    The definition is applied literally: a maximal sector need not contain
    any zero itself. ``N(Q)`` is recorded for every member.
    """
    if int(N_max) != N_max or N_max < 1:
        raise ParameterError(f"N_max must be a positive integer, got {N_max!r}")
    return _families_from(tree, _scored_candidates(tree), range(1, int(N_max) + 1))


def max_density(tree: DyadicTree) -> int:
    """Largest ``F(Q)`` over all sectors (attained at a deepest candidate)."""
    best = 0
    for Q in _candidates(tree):
        best = max(best, _density_int(tree, Q))
    return best


def _check_p(p):
    if not 0.0 < p < 1.0:
        raise ParameterError(f"p must lie in (0, 1), got {p!r}")


def corollary_F_sum(tree: DyadicTree, p: float, N_max: Optional[int] = None) -> float:
    """``sum_{N=1}^{N_max} 2^(Np) l(E_N)``.

    With ``N_max=None`` the sum runs until the families are empty, so it is
    complete for the finite tree.

    Warns
    -----
    TruncationWarning
        When ``E_{N_max}`` is still nonempty.
    """
    _check_p(p)
    scored = _scored_candidates(tree)
    if N_max is None:
        top = max((f for _, f, _ in scored), default=0)
        N_max = max(1, top.bit_length())
    fams = _families_from(tree, scored, range(1, int(N_max) + 1))
    if fams and fams[-1].sectors:
        warnings.warn(f"E_{N_max} is nonempty; the sum is truncated",
                      TruncationWarning, stacklevel=2)
    return math.fsum(2.0 ** (fam.N * p) * fam.total_length for fam in fams)


def protas_dyadic_sum(tree: DyadicTree, p: float) -> float:
    """``sum N(Q)^p l(Q)^(1-p)`` over occupied sectors of level >= 2."""
    _check_p(p)
    return math.fsum(tree.N(Q) ** p * Q.length ** (1.0 - p) for Q in tree.occupied(min_level=2))


def epsilon_family(tree: DyadicTree, Q0: DyadicSector, eps: float):
    """Proper subsectors of ``Q0`` whose density ``N(Q)/l(Q)`` is within ``eps`` of ``Q0``'s.

    Returns
    -------
    sectors : list of DyadicSector
    total_length : float
        ``sum l(Q)`` over the family.
    ratio : float
        ``total_length / l(Q0)``.
    """
    if not 0.0 < eps < 1.0:
        raise ParameterError(f"eps must lie in (0, 1), got {eps!r}")
    n0 = tree.N(Q0)
    if n0 <= 0:
        raise ParameterError(f"N(Q0) must be positive for {Q0}")
    ref = n0 * 2.0 ** (Q0.level - 1)
    fam = []
    for Q in tree.occupied(min_level=Q0.level + 1):
        if not Q0.contains(Q):
            continue
        dens = tree.N(Q) * 2.0 ** (Q.level - 1)
        if (1.0 - eps) * ref <= dens <= (1.0 + eps) * ref:
            fam.append(Q)
    total = math.fsum(Q.length for Q in fam)
    return fam, total, total / Q0.length


def verbitskii_levels(zeros: ZeroList) -> dict:
    """Counts ``N_j`` of zeros with ``2^-j <= 1 - |z| < 2^(1-j)``, ``j >= 0``."""
    counts: dict = {}
    if zeros.points.size == 0:
        return counts
    r = np.abs(zeros.points)
    t = 1.0 - r
    _, expo = np.frexp(t)
    # t a few ulps below 2^-j comes from a zero placed on 1 - 2^-j: band j
    below_edge = (np.ldexp(1.0, expo) - t) <= _EDGE_ULPS * np.spacing(r)
    band = np.where(below_edge, -expo, 1 - expo)
    for j, m in zip(band.tolist(), zeros.mult.tolist()):
        counts[j] = counts.get(j, 0) + m
    return dict(sorted(counts.items()))


def verbitskii_profile(zeros: ZeroList, p: float):
    """Level counts and ``sum_j 2^(-j(1-p)) N_j^p``."""
    _check_p(p)
    counts = verbitskii_levels(zeros)
    total = math.fsum(2.0 ** (-j * (1.0 - p)) * n ** p for j, n in counts.items())
    return counts, total


def separation_constant(zeros: ZeroList, block: int = 1024) -> float:
    """Minimum pseudo-hyperbolic distance between distinct zeros; 0 with any repeated zero."""
    if zeros.degree < 2:
        raise ParameterError("separation needs at least two zeros")
    if np.any(zeros.mult > 1):
        return 0.0
    a = zeros.points
    best = math.inf
    for s in range(0, a.size, block):
        blk = a[s:s + block]
        d = pseudo_distance(blk[:, None], a[None, s:])
        # keep pairs (i, j) with j > i only
        d[np.arange(blk.size)[:, None] >= np.arange(a.size - s)[None, :]] = np.inf
        best = min(best, float(d.min()))
    return best
