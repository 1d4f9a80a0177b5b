"""Compiled inner loops over (sample point, zero) pairs.

Every public evaluator in :mod:`blaschke_hp.core` funnels through these; they
are plain loops so the summation order is fixed and results are
reproducible bit for bit.
"""
import numpy as np
from numba import njit

# below this distance from a zero the logarithmic derivative overflows
_NEAR = 1e-150


@njit(cache=True)
def value_and_derivative(a, m, u, z, want_der):
    n = z.size
    val = np.empty(n, dtype=np.complex128)
    der = np.empty(n, dtype=np.complex128)
    k_count = a.size
    near = np.empty(k_count, dtype=np.int64)
    for i in range(n):
        zi = z[i]
        prod = 1.0 + 0.0j
        s = 0.0 + 0.0j
        n_near = 0
        for k in range(k_count):
            ak = a[k]
            num = ak - zi
            den = 1.0 - ak.conjugate() * zi
            if abs(num) < _NEAR:
                # 1/num would overflow: take these factors by the product rule
                near[n_near] = k
                n_near += 1
                continue
            f = num / den
            mk = m[k]
            if mk == 1:
                prod *= f
            else:
                prod *= f ** mk
            if want_der:
                s -= mk * (1.0 - (ak.real * ak.real + ak.imag * ak.imag)) / (num * den)
        if n_near == 0:
            val[i] = u * prod
            if want_der:
                der[i] = val[i] * s
            continue
        near_prod = 1.0 + 0.0j
        for h in range(n_near):
            near_prod *= _factor(a[near[h]], zi) ** m[near[h]]
        val[i] = u * prod * near_prod
        if want_der:
            d = prod * s * near_prod
            for h in range(n_near):
                ah = a[near[h]]
                mh = m[near[h]]
                den = 1.0 - ah.conjugate() * zi
                fp = -(1.0 - (ah.real * ah.real + ah.imag * ah.imag)) / (den * den)
                term = mh * fp * prod
                if mh >= 2:
                    term *= _factor(ah, zi) ** (mh - 1)
                for g in range(n_near):
                    if g != h:
                        term *= _factor(a[near[g]], zi) ** m[near[g]]
                d += term
            der[i] = u * d
    return val, der


@njit(cache=True)
def _factor(ak, zi):
    return (ak - zi) / (1.0 - ak.conjugate() * zi)


@njit(cache=True)
def log_modulus(a, m, z):
    # products of squared ratios, flushed to a log before they under/overflow
    n = z.size
    out = np.empty(n)
    for i in range(n):
        zr = z[i].real
        zi = z[i].imag
        acc = 0.0
        prod = 1.0
        for k in range(a.size):
            ar = a[k].real
            ai = a[k].imag
            nr = ar - zr
            ni = ai - zi
            num = nr * nr + ni * ni
            if num == 0.0:
                acc = -np.inf
                break
            dr = 1.0 - (ar * zr + ai * zi)
            di = -(ar * zi - ai * zr)
            q = num / (dr * dr + di * di)
            mk = m[k]
            if mk == 1:
                prod *= q
            else:
                prod *= q ** mk
            if prod < 1e-200 or prod > 1e200:
                acc += np.log(prod)
                prod = 1.0
        if acc != -np.inf:
            acc += np.log(prod)
        out[i] = 0.5 * acc
    return out


@njit(cache=True)
def poisson_sum(a, w, theta):
    """sum_k w_k / |a_k - e^{i theta}|^2."""
    n = theta.size
    out = np.empty(n)
    for i in range(n):
        c = np.cos(theta[i])
        s = np.sin(theta[i])
        acc = 0.0
        for k in range(a.size):
            dx = a[k].real - c
            dy = a[k].imag - s
            acc += w[k] / (dx * dx + dy * dy)
        out[i] = acc
    return out


@njit(cache=True)
def kernel_bound(a, w, z):
    """sum_k w_k / |1 - conj(a_k) z|^2."""
    n = z.size
    out = np.empty(n)
    for i in range(n):
        acc = 0.0
        for k in range(a.size):
            d = 1.0 - a[k].conjugate() * z[i]
            acc += w[k] / (d.real * d.real + d.imag * d.imag)
        out[i] = acc
    return out
