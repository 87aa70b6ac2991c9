"""Small numeric helpers shared across modules."""

import numpy as np


def glue(t):
    """Smooth transition g with g=0 for t<=0, g=1 for t>=1.

    g(t) = e^{-1/t} / (e^{-1/t} + e^{-1/(1-t)}), clamped outside (0, 1).
    All derivatives vanish at both endpoints, so pieces built from g join
    infinitely smoothly.
    """
    t = np.asarray(t, dtype=float)
    out = np.empty_like(t)
    lo = t <= 0.0
    hi = t >= 1.0
    mid = ~(lo | hi)
    out[lo] = 0.0
    out[hi] = 1.0
    tm = t[mid]
    with np.errstate(over="ignore", divide="ignore"):
        a = np.exp(-1.0 / tm)
        b = np.exp(-1.0 / (1.0 - tm))
    out[mid] = a / (a + b)
    return out


def bisect(fn, lo, hi, target=0.0, tol=1e-10):
    """Locate fn(x) == target on [lo, hi] by bisection; fn must change sign."""
    flo = fn(lo) - target
    fhi = fn(hi) - target
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise ValueError("bisection bracket does not straddle the target")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fmid = fn(mid) - target
        if fmid == 0.0:
            return mid
        if flo * fmid < 0:
            hi = mid
        else:
            lo, flo = mid, fmid
    return 0.5 * (lo + hi)


def fit_slope(x, y):
    """Least-squares slope of y against x."""
    return float(np.polyfit(np.asarray(x, float), np.asarray(y, float), 1)[0])


def kahan_update(total, comp, term):
    """One compensated-summation step, in place on `total` and `comp` arrays."""
    y = term - comp
    t = total + y
    comp[...] = (t - total) - y
    total[...] = t


def log_spaced(lo, hi, count):
    return np.logspace(np.log10(lo), np.log10(hi), count)
