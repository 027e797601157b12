"""Brute-force references used only by the tests.

None of these call the closed-form flow or the event search of the
package; they integrate or sample the ODE on their own.
"""
from __future__ import annotations

import numba
import numpy as np
from scipy.optimize import brentq


@numba.njit(cache=True)
def _rk4(x1, x2, a, b, h, n):
    # x1' = x2, x2' = -a x2 - b x1
    for _ in range(n):
        k1a = x2
        k1b = -a * x2 - b * x1
        y1 = x1 + 0.5 * h * k1a
        y2 = x2 + 0.5 * h * k1b
        k2a = y2
        k2b = -a * y2 - b * y1
        y1 = x1 + 0.5 * h * k2a
        y2 = x2 + 0.5 * h * k2b
        k3a = y2
        k3b = -a * y2 - b * y1
        y1 = x1 + h * k3a
        y2 = x2 + h * k3b
        k4a = y2
        k4b = -a * y2 - b * y1
        x1 = x1 + h / 6.0 * (k1a + 2 * k2a + 2 * k3a + k4a)
        x2 = x2 + h / 6.0 * (k1b + 2 * k2b + 2 * k3b + k4b)
    return x1, x2


def rk4_fixed_step(m, c, k, x, duration, h=1e-6):
    """Classical RK4 with a fixed step; ``duration`` is rounded to a whole number of steps."""
    n = int(round(abs(duration) / h))
    step = np.copysign(h, duration)
    return _rk4(float(x[0]), float(x[1]), c / m, k / m, step, n)


def _closed_form_free(m, c, k, x, t):
    # independent textbook form via the eigen-decomposition of the companion matrix
    A = np.array([[0.0, 1.0], [-k / m, -c / m]])
    w, V = np.linalg.eig(A)
    coeff = np.linalg.solve(V, np.asarray(x, dtype=complex))
    t = np.atleast_1d(t)
    return np.real((V[None, :, :] * (coeff * np.exp(np.outer(t, w)))[:, None, :]).sum(axis=2))


def dense_first_root(m, c, k, x, comp, target=0.0, direction=1.0, dt=1e-5, t_max=10.0):
    """First root of ``x_comp(direction*t) - target`` by dense sampling + brentq."""
    t = np.arange(0.0, t_max, dt)
    vals = _closed_form_free(m, c, k, x, direction * t)[:, comp] - target
    s = np.sign(vals)
    idx = np.flatnonzero(s[1:] * s[0] <= 0)[0] + 1
    f = lambda tt: _closed_form_free(m, c, k, x, direction * tt)[0, comp] - target  # noqa: E731
    return brentq(f, t[idx - 1], t[idx], xtol=1e-15, rtol=4 * np.finfo(float).eps)


def state_at(m, c, k, x, t):
    return _closed_form_free(m, c, k, x, t)[0]


def simulate_centered_jumps(m, c, k, theta_hat, x0, n_jumps, dt=1e-4):
    """Post-jump states of the centered reset law, built from ``dense_first_root`` alone."""
    x = np.asarray(x0, dtype=float)
    posts = []
    for _ in range(n_jumps):
        tau = 0.0 if x[0] == 0.0 else dense_first_root(m, c, k, x, 0, dt=dt)
        pre = state_at(m, c, k, x, tau)
        x = np.array([theta_hat * np.sign(pre[1]), pre[1]])
        posts.append(x.copy())
    return np.array(posts)
