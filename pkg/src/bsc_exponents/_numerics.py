"""One-dimensional solvers shared by the rest of the package.

Bracketed bisection, golden-section search and adaptive Simpson quadrature.
Everything here is scalar, pure Python and free of global state.
"""

from __future__ import annotations

import math
from collections.abc import Callable

from .errors import ConvergenceError, QuadratureError

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def bisect(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-12,
    max_iter: int = 200,
    name: str = "bisect",
) -> float:
    """Root of ``f`` on ``[lo, hi]`` by bisection.

    The endpoint values must have opposite signs (or one of them be zero);
    otherwise the bracket is rejected with a :class:`ConvergenceError` that
    carries both endpoints and their residuals.  Iteration stops when the
    bracket is narrower than ``xtol`` or no longer shrinks in floating point.
    """
    flo = f(lo)
    if flo == 0.0:
        return lo
    fhi = f(hi)
    if fhi == 0.0:
        return hi
    if (flo > 0.0) == (fhi > 0.0):
        raise ConvergenceError(
            f"{name}: endpoints do not bracket a root",
            lo=lo, hi=hi, f_lo=flo, f_hi=fhi,
        )
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= xtol or mid <= lo or mid >= hi:
            break
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0.0) == (flo > 0.0):
            lo, flo = mid, fmid
        else:
            hi, fhi = mid, fmid
    return 0.5 * (lo + hi)


def golden_max(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-10,
    max_iter: int = 200,
) -> tuple[float, float]:
    """Maximise a unimodal ``f`` on ``[lo, hi]``; returns ``(x, f(x))``.

    The endpoints are compared against the interior optimum, so a maximum
    sitting on the boundary is reported exactly.
    """
    a, b = lo, hi
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if b - a <= xtol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x, fx = (c, fc) if fc >= fd else (d, fd)
    for edge in (lo, hi):
        fe = f(edge)
        if fe > fx:
            x, fx = edge, fe
    return x, fx


def golden_min(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    xtol: float = 1e-10,
    max_iter: int = 200,
) -> tuple[float, float]:
    x, fx = golden_max(lambda z: -f(z), lo, hi, xtol=xtol, max_iter=max_iter)
    return x, -fx


def grid_then_golden_min(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    n_grid: int = 200,
    xtol: float = 1e-10,
) -> tuple[float, float]:
    """Coarse grid scan followed by golden-section refinement around the best node."""
    if hi <= lo:
        return lo, f(lo)
    step = (hi - lo) / n_grid
    xs = [lo + i * step for i in range(n_grid)] + [hi]
    vals = [f(x) for x in xs]
    k = min(range(len(xs)), key=vals.__getitem__)
    a = xs[max(k - 1, 0)]
    b = xs[min(k + 1, len(xs) - 1)]
    x, fx = golden_min(f, a, b, xtol=xtol)
    if vals[k] < fx:
        return xs[k], vals[k]
    return x, fx


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h * (fa + 4.0 * fm + fb) / 6.0


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    max_depth: int = 48,
    initial_panels: int = 4,
    max_panels: int = 256,
) -> tuple[float, float]:
    """Integrate ``f`` over ``[a, b]``; returns ``(value, error_estimate)``.

    Classic adaptive Simpson with the Richardson correction, run on an explicit
    stack.  If some panel exhausts ``max_depth`` before meeting its share of the
    tolerance, the whole integration restarts with twice as many initial
    panels; once ``max_panels`` is exceeded a :class:`QuadratureError` is raised
    carrying the best error estimate reached.
    """
    if a == b:
        return 0.0, 0.0
    if b < a:
        val, err = adaptive_simpson(f, b, a, tol, max_depth, initial_panels, max_panels)
        return -val, err

    panels = initial_panels
    best_err = math.inf
    while panels <= max_panels:
        total, err_total, ok = _adaptive_pass(f, a, b, tol, max_depth, panels)
        if ok:
            return total, err_total
        best_err = min(best_err, err_total)
        panels *= 2
    raise QuadratureError(
        "adaptive Simpson did not converge",
        achieved_error=best_err, tol=tol, a=a, b=b,
    )


def _adaptive_pass(f, a, b, tol, max_depth, panels):
    width = (b - a) / panels
    total = 0.0
    err_total = 0.0
    ok = True
    for k in range(panels):
        x0 = a + k * width
        x1 = b if k == panels - 1 else x0 + width
        xm = 0.5 * (x0 + x1)
        f0, fm, f1 = f(x0), f(xm), f(x1)
        whole = _simpson(f0, fm, f1, x1 - x0)
        stack = [(x0, x1, f0, fm, f1, whole, tol / panels, 0)]
        while stack:
            lo, hi, flo, fmid, fhi, s, eps, depth = stack.pop()
            mid = 0.5 * (lo + hi)
            lm = 0.5 * (lo + mid)
            rm = 0.5 * (mid + hi)
            flm, frm = f(lm), f(rm)
            left = _simpson(flo, flm, fmid, mid - lo)
            right = _simpson(fmid, frm, fhi, hi - mid)
            delta = left + right - s
            if abs(delta) <= 15.0 * eps or depth >= max_depth:
                if depth >= max_depth and abs(delta) > 15.0 * eps:
                    ok = False
                total += left + right + delta / 15.0
                err_total += abs(delta) / 15.0
            else:
                stack.append((lo, mid, flo, flm, fmid, left, 0.5 * eps, depth + 1))
                stack.append((mid, hi, fmid, frm, fhi, right, 0.5 * eps, depth + 1))
    return total, err_total, ok
