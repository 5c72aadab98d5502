"""Bracketed golden-section scalar minimization."""

from __future__ import annotations

import math

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_INVPHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def golden_min(f, lo: float, hi: float, tol: float = 1e-8, max_iter: int = 200):
    """Minimize a unimodal scalar function on [lo, hi].

    Returns (x, f(x)) with x located to within roughly ``tol``.  On a
    multimodal function the result is one local minimum inside the bracket.
    """
    if not (lo < hi):
        raise ValueError("need lo < hi")
    a, b = lo, hi
    h = b - a
    c = a + _INVPHI2 * h
    d = a + _INVPHI * h
    fc = f(c)
    fd = f(d)
    for _ in range(max_iter):
        if h <= tol:
            break
        if fc < fd:
            b, d, fd = d, c, fc
            h = b - a
            c = a + _INVPHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = b - a
            d = a + _INVPHI * h
            fd = f(d)
    if fc < fd:
        return c, fc
    return d, fd
