"""The hybrid periodic orbit and distances to it.

The orbit is found on the vertical piece of C0: a post-jump state
``(theta_hat, v)`` flows to the jump set and arrives with speed
``return_speed(v)``.  By central symmetry of the phase portrait, the next
jump sends it to ``(-theta_hat, -return_speed(v))``, so the orbit is the
fixed point ``return_speed(v) = v`` and its period is two flow arcs and
two jumps.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import State, SystemParams, as_state, flow_samples
from .energy import energy_split
from .errors import BracketNotFound
from .events import time_to_D

MAX_DOUBLINGS = 60
DEFAULT_ORBIT_SAMPLES = 2048


def return_speed(p: SystemParams, v: float) -> float:
    """|x2| at the first jump-set crossing after leaving (theta_hat, v)."""
    if not v > 0.0:
        raise ValueError(f"post-jump speed must be positive, got {v}")
    return abs(time_to_D(p, (p.theta_hat, v)).state.x2)


def return_gap(p: SystemParams, v: float) -> float:
    return return_speed(p, v) - v


@dataclass(frozen=True)
class OrbitSolution:
    v_star: float
    tau_star: float
    samples: np.ndarray = field(repr=False)
    fixed_point_residual: float
    balance_residual: float
    period_J: int = 2

    @property
    def period_T(self) -> float:
        return 2.0 * self.tau_star

    @property
    def post_jump_state(self) -> State:
        return State(float(self.samples[0, 0]), self.v_star)

    def polyline(self) -> np.ndarray:
        """Both flow arcs of the orbit, as two polylines stacked (2, n, 2)."""
        return np.stack([self.samples, -self.samples])


def _bracket(p: SystemParams) -> tuple[float, float]:
    seed = p.theta_hat * p.omega_d / 8.0
    if return_gap(p, seed) > 0.0:
        lo, hi = seed, 2.0 * seed
        for _ in range(MAX_DOUBLINGS):
            if return_gap(p, hi) <= 0.0:
                return lo, hi
            lo, hi = hi, 2.0 * hi
    else:
        lo, hi = 0.5 * seed, seed
        for _ in range(MAX_DOUBLINGS):
            if return_gap(p, lo) > 0.0:
                return lo, hi
            lo, hi = 0.5 * lo, lo
    raise BracketNotFound(f"return_speed(v) - v keeps its sign over {MAX_DOUBLINGS} doublings")


def find_periodic_orbit(p: SystemParams, n_samples: int = DEFAULT_ORBIT_SAMPLES) -> OrbitSolution:
    """Locate the unique post-jump speed v* with return_speed(v*) = v*.

    Bisection on a doubling bracket, run to full floating precision;
    ``g = return_speed(v) - v`` is positive below v* and negative above.
    """
    lo, hi = _bracket(p)
    g_lo, g_hi = return_gap(p, lo), return_gap(p, hi)
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        g_mid = return_gap(p, mid)
        if g_mid > 0.0:
            lo, g_lo = mid, g_mid
        else:
            hi, g_hi = mid, g_mid
        if g_mid == 0.0:
            break
    v_star = lo if abs(g_lo) < abs(g_hi) else hi
    start = State(p.theta_hat, v_star)
    tau = time_to_D(p, start).tau
    samples = flow_samples(p, start, np.linspace(0.0, tau, n_samples))
    samples[0] = start
    samples[-1, 0] = 0.0
    split = energy_split(p, start)
    return OrbitSolution(
        v_star=v_star,
        tau_star=tau,
        samples=samples,
        fixed_point_residual=abs(return_gap(p, v_star)),
        balance_residual=abs(split.T_b + split.U_b - split.T_f - p.u_hat),
    )


def _polyline_distance(points: np.ndarray, line: np.ndarray) -> np.ndarray:
    a = line[:-1]
    d = line[1:] - a
    dd = np.einsum("ij,ij->i", d, d)
    dd = np.where(dd > 0.0, dd, 1.0)
    rel = points[:, None, :] - a[None, :, :]
    s = np.clip(np.einsum("pij,ij->pi", rel, d) / dd, 0.0, 1.0)
    foot = a[None, :, :] + s[..., None] * d[None, :, :]
    return np.sqrt(((points[:, None, :] - foot) ** 2).sum(axis=-1)).min(axis=1)


def distance_to_attractor(p: SystemParams, x, orbit: OrbitSolution) -> float:
    """Euclidean distance from ``x`` to the two flow arcs of the orbit."""
    x = as_state(x)
    pt = np.array([[x.x1, x.x2]])
    return float(min(_polyline_distance(pt, arc)[0] for arc in orbit.polyline()))


def return_gap_scan(p: SystemParams, v_star: float, n: int = 50) -> tuple[np.ndarray, np.ndarray]:
    """g on a log grid spanning [v*/10, 10 v*]."""
    vs = np.geomspace(v_star / 10.0, 10.0 * v_star, n)
    return vs, np.array([return_gap(p, float(v)) for v in vs])
