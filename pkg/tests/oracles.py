"""Independent reference computations used by the tests.

Nothing here calls into blaschke_hp: products are evaluated factor by
factor with mpmath or plain Python, dyadic quantities by exhaustive
enumeration with integer arithmetic.
"""
import math
from fractions import Fraction

import mpmath as mp


def mp_product(points, z, u=None):
    """B(z) with the default unimodular constant, in mpmath."""
    z = mp.mpc(z)
    val = mp.mpc(1)
    for a in points:
        a = mp.mpc(a)
        if a != 0:
            val *= abs(a) / a
        val *= (a - z) / (1 - mp.conj(a) * z)
    return val if u is None else val * u


def mp_derivative(points, z):
    return mp.diff(lambda w: mp_product(points, w), mp.mpc(z))


def poisson_sum(points, theta):
    e = complex(math.cos(theta), math.sin(theta))
    return math.fsum((1 - abs(a) ** 2) / abs(a - e) ** 2 for a in points)


# ---------------------------------------------------------------------------
# dyadic brute force
# ---------------------------------------------------------------------------

def sector_arc(level, index, scale):
    """Arc [lo, hi) of a sector in units of 2^-scale of the full circle."""
    width = 1 << (scale - level + 1)
    return (index - 1) * width, index * width


def brute_level_index(z):
    """Level by direct comparison with powers of two, index by exact angle fraction."""
    t = Fraction(1) - Fraction(abs(z))
    n = 1
    while not (Fraction(1, 2 ** n) < t <= Fraction(1, 2 ** (n - 1))):
        n += 1
    ang = math.atan2(z.imag, z.real) % (2 * math.pi)
    j = int(ang / (2 * math.pi) * 2 ** (n - 1)) + 1
    return n, min(j, 2 ** (n - 1))


def brute_counts(levels_indices, mults):
    counts = {}
    for (n, j), m in zip(levels_indices, mults):
        counts[(n, j)] = counts.get((n, j), 0) + m
    return counts


def brute_density(counts, level, index, scale=48):
    """Sum of N(R) / l(R) over occupied R with l(R) >= l(Q) and Q inside 3R (wrapping)."""
    full = 1 << scale
    qlo, qhi = sector_arc(level, index, scale)
    total = Fraction(0)
    for (n, j), N in counts.items():
        if n < 2 or n > level or N == 0:
            continue
        rlo, rhi = sector_arc(n, j, scale)
        w = rhi - rlo
        if 3 * w >= full:
            inside = True
        else:
            start = (rlo - w) % full
            inside = ((qlo - start) % full) + (qhi - qlo) <= 3 * w
        if inside:
            total += Fraction(N) / Fraction(2, 2 ** n)
    return total


def brute_families(counts, N_max, max_level):
    """Maximal sectors by exhaustive search over every sector of levels 2..max_level+1."""
    dens = {}
    for n in range(2, max_level + 2):
        for j in range(1, 2 ** (n - 1) + 1):
            dens[(n, j)] = brute_density(counts, n, j)
    fams = {}
    for N in range(1, N_max + 1):
        thr = 2 ** N
        fam = []
        for (n, j), f in dens.items():
            if f <= thr:
                continue
            parent = dens.get((n - 1, (j + 1) // 2), Fraction(0))
            if n == 2 or parent <= thr:
                fam.append((n, j))
        fams[N] = sorted(fam)
    return fams, dens


def brute_F_sum(fams, p):
    return math.fsum(2.0 ** (N * p) * math.fsum(2.0 ** (1 - n) for n, _ in fam)
                     for N, fam in fams.items())
