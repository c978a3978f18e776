"""Shared numerical kernels: fixed-step RK4, Simpson quadrature on uniform
grids, and finite-difference stencils for sampled curves.

The classical-kernel implementations are deliberately self-contained so the
convergence orders quoted in the test-suite (4th order for RK4 endpoint
error, 4th order for the composite-Simpson endpoint error) are properties of
this code rather than of a library default that may change underneath us.
Adaptive quadrature and adaptive ODE stepping are delegated to SciPy.
"""

from __future__ import annotations

from typing import Callable

import numpy as np
from scipy.integrate import quad


def rk4_fixed(
    f: Callable[[float, np.ndarray], np.ndarray],
    y0: np.ndarray,
    s0: float,
    s1: float,
    step: float,
    record_every: int = 1,
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate ``y' = f(s, y)`` with the classical 4-stage Runge-Kutta
    scheme at fixed step size.

    The interval is covered by uniform steps of size ``step``; a final
    shorter step closes any remainder.  Every ``record_every``-th state is
    recorded (the final state always is).

    Returns:
        ``(s_values, states)`` where ``states[k]`` is the solution at
        ``s_values[k]``.
    """
    if step <= 0.0:
        raise ValueError("step must be positive")
    if record_every < 1:
        raise ValueError("record_every must be >= 1")
    y = np.array(y0, dtype=float)
    s = float(s0)
    length = float(s1) - float(s0)
    if length < 0.0:
        raise ValueError("s1 must be >= s0")
    n_full = int(np.floor(length / step + 1e-12))
    remainder = length - n_full * step
    if remainder < 1e-12 * max(1.0, abs(length)):
        remainder = 0.0

    s_out = [s]
    y_out = [y.copy()]
    for k in range(n_full):
        y = _rk4_step(f, s, y, step)
        s = s0 + (k + 1) * step
        if (k + 1) % record_every == 0:
            s_out.append(s)
            y_out.append(y.copy())
    if remainder > 0.0:
        y = _rk4_step(f, s, y, remainder)
        s = float(s1)
        s_out.append(s)
        y_out.append(y.copy())
    elif s_out[-1] != s:
        s_out.append(s)
        y_out.append(y.copy())
    return np.asarray(s_out), np.asarray(y_out)


def _rk4_step(
    f: Callable[[float, np.ndarray], np.ndarray],
    s: float,
    y: np.ndarray,
    h: float,
) -> np.ndarray:
    k1 = f(s, y)
    k2 = f(s + 0.5 * h, y + 0.5 * h * k1)
    k3 = f(s + 0.5 * h, y + 0.5 * h * k2)
    k4 = f(s + h, y + h * k3)
    return y + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def simpson_uniform(y: np.ndarray, h: float) -> float:
    """Composite Simpson integral of uniformly sampled values.

    Requires an odd number of samples (an even number of panels).
    """
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    if n < 3 or n % 2 == 0:
        raise ValueError("simpson_uniform needs an odd sample count >= 3")
    return float(
        (h / 3.0)
        * (y[0] + y[-1] + 4.0 * np.sum(y[1:-1:2]) + 2.0 * np.sum(y[2:-2:2]))
    )


def cumulative_simpson_uniform(y: np.ndarray, h: float) -> np.ndarray:
    """Cumulative integral of uniformly sampled values.

    At even indices this reproduces composite Simpson exactly; odd indices
    add the integral of the local 3-point quadratic over the leading half
    of the panel pair.  The endpoint value therefore carries the classical
    O(h^4) composite-Simpson error for smooth integrands.
    """
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    if n < 3 or n % 2 == 0:
        raise ValueError("cumulative_simpson_uniform needs an odd sample count >= 3")
    out = np.empty(n, dtype=float)
    out[0] = 0.0
    # Integral over each pair of panels [2k, 2k+2] and its first half.
    y0 = y[0:-2:2]
    y1 = y[1:-1:2]
    y2 = y[2::2]
    pair = (h / 3.0) * (y0 + 4.0 * y1 + y2)
    half = (h / 12.0) * (5.0 * y0 + 8.0 * y1 - y2)
    even = np.concatenate(([0.0], np.cumsum(pair)))
    out[0::2] = even
    out[1::2] = even[:-1] + half
    return out


def cumulative_quad(
    f: Callable[[float], float],
    s_grid: np.ndarray,
    tol: float = 1e-10,
) -> np.ndarray:
    """Cumulative integral of a callable along a grid using adaptive
    Gauss-Kronrod quadrature on each subinterval."""
    s_grid = np.asarray(s_grid, dtype=float)
    out = np.zeros(s_grid.shape[0], dtype=float)
    acc = 0.0
    for k in range(1, s_grid.shape[0]):
        val, _ = quad(f, s_grid[k - 1], s_grid[k], epsabs=tol, epsrel=tol)
        acc += val
        out[k] = acc
    return out


def derivative_uniform(y: np.ndarray, h: float) -> np.ndarray:
    """First derivative of uniformly sampled values.

    4th-order central stencils in the interior, 2nd-order one-sided at the
    two samples next to each boundary.  ``y`` may be 1-D or 2-D with
    samples along axis 0.
    """
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    if n < 5:
        raise ValueError("derivative_uniform needs at least 5 samples")
    d = np.empty_like(y)
    d[2:-2] = (-y[4:] + 8.0 * y[3:-1] - 8.0 * y[1:-3] + y[:-4]) / (12.0 * h)
    d[0] = (-3.0 * y[0] + 4.0 * y[1] - y[2]) / (2.0 * h)
    d[1] = (y[2] - y[0]) / (2.0 * h)
    d[-2] = (y[-1] - y[-3]) / (2.0 * h)
    d[-1] = (3.0 * y[-1] - 4.0 * y[-2] + y[-3]) / (2.0 * h)
    return d


def second_derivative_uniform(y: np.ndarray, h: float) -> np.ndarray:
    """Second derivative of uniformly sampled values.

    4th-order central stencils in the interior; the two samples at each
    boundary fall back to the 2nd-order stencil of their nearest interior
    neighbour (callers that need certified accuracy should exclude the
    boundary samples).
    """
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    if n < 5:
        raise ValueError("second_derivative_uniform needs at least 5 samples")
    d = np.empty_like(y)
    d[2:-2] = (
        -y[4:] + 16.0 * y[3:-1] - 30.0 * y[2:-2] + 16.0 * y[1:-3] - y[:-4]
    ) / (12.0 * h * h)
    d[0] = (y[2] - 2.0 * y[1] + y[0]) / (h * h)
    d[1] = (y[2] - 2.0 * y[1] + y[0]) / (h * h)
    d[-2] = (y[-1] - 2.0 * y[-2] + y[-3]) / (h * h)
    d[-1] = (y[-1] - 2.0 * y[-2] + y[-3]) / (h * h)
    return d


def one_sided_derivative_4th(y: np.ndarray, h: float) -> np.ndarray:
    """4th-order one-sided first derivative at the initial sample."""
    y = np.asarray(y, dtype=float)
    if y.shape[0] < 5:
        raise ValueError("one_sided_derivative_4th needs at least 5 samples")
    return (
        -25.0 * y[0] + 48.0 * y[1] - 36.0 * y[2] + 16.0 * y[3] - 3.0 * y[4]
    ) / (12.0 * h)
