"""Mass-spring-damper with reset feedback: parameters, exact flow and set predicates.

Coordinates are ``x1 = q - theta`` (spring deflection) and ``x2 = dq/dt``.
The flow is the linear damped oscillator

    x1' = x2
    x2' = -(c/m) x2 - (k/m) x1

and the reset moves the spring anchor so that ``|x1|`` jumps from 0 to
``theta_hat`` while the velocity is untouched.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .errors import MissingBranch, NonPositiveParameter, NotUnderdamped


class State(NamedTuple):
    """A point of the phase plane."""

    x1: float
    x2: float

    def __neg__(self) -> State:
        return State(-self.x1, -self.x2)

    @property
    def norm(self) -> float:
        return math.hypot(self.x1, self.x2)


def as_state(x: Sequence[float]) -> State:
    if isinstance(x, State):
        return x
    x1, x2 = (float(v) for v in x)
    if not (math.isfinite(x1) and math.isfinite(x2)):
        raise ValueError(f"state must be finite, got ({x1}, {x2})")
    return State(x1, x2)


@dataclass(frozen=True)
class SystemParams:
    """Physical constants of the oscillator and the reset offset.

    ``sigma`` and ``omega_d`` are derived on construction; use
    :func:`make_params` or construct directly, both validate.
    """

    m: float
    c: float
    k: float
    theta_hat: float
    sigma: float = field(init=False)
    omega_d: float = field(init=False)

    def __post_init__(self) -> None:
        for name in ("m", "c", "k", "theta_hat"):
            val = float(getattr(self, name))
            if not math.isfinite(val) or val <= 0.0:
                raise NonPositiveParameter(f"{name} must be strictly positive, got {val}")
            object.__setattr__(self, name, val)
        sigma = self.c / (2.0 * self.m)
        disc = sigma * sigma - self.k / self.m
        if disc >= 0.0:
            raise NotUnderdamped(
                f"(c/2m)^2 - k/m = {disc:.6g} >= 0: characteristic roots are real"
            )
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "omega_d", math.sqrt(-disc))

    @property
    def omega_n2(self) -> float:
        """Squared undamped natural frequency k/m."""
        return self.k / self.m

    @property
    def period(self) -> float:
        """Damped period 2*pi/omega_d."""
        return 2.0 * math.pi / self.omega_d

    @property
    def u_hat(self) -> float:
        """Potential energy injected by one reset, k*theta_hat**2/2."""
        return 0.5 * self.k * self.theta_hat**2

    def as_dict(self) -> dict[str, float]:
        return {"m": self.m, "c": self.c, "k": self.k, "theta_hat": self.theta_hat}


def make_params(m: float, c: float, k: float, theta_hat: float) -> SystemParams:
    return SystemParams(m, c, k, theta_hat)


def flow_map(p: SystemParams, x: Sequence[float]) -> State:
    x1, x2 = x
    return State(x2, -(p.c / p.m) * x2 - (p.k / p.m) * x1)


def _propagate_arrays(p: SystemParams, x1, x2, dt):
    wt = p.omega_d * dt
    env = np.exp(-p.sigma * dt)
    cs = np.cos(wt)
    sn = np.sin(wt)
    b1 = (x2 + p.sigma * x1) / p.omega_d
    b2 = (p.omega_n2 * x1 + p.sigma * x2) / p.omega_d
    return env * (x1 * cs + b1 * sn), env * (x2 * cs - b2 * sn)


def _propagate_scalar(p: SystemParams, x1: float, x2: float, dt: float) -> tuple[float, float]:
    # same arithmetic as _propagate_arrays, on Python floats
    wt = p.omega_d * dt
    env = math.exp(-p.sigma * dt)
    cs = math.cos(wt)
    sn = math.sin(wt)
    b1 = (x2 + p.sigma * x1) / p.omega_d
    b2 = (p.omega_n2 * x1 + p.sigma * x2) / p.omega_d
    return env * (x1 * cs + b1 * sn), env * (x2 * cs - b2 * sn)


def propagate(p: SystemParams, x: Sequence[float], dt: float) -> State:
    """Exact solution of the flow after a signed duration ``dt``."""
    x = as_state(x)
    if dt == 0.0:
        return x
    return State(*_propagate_scalar(p, x.x1, x.x2, float(dt)))


def flow_samples(p: SystemParams, x: Sequence[float], times) -> np.ndarray:
    """States along the exact flow at each entry of ``times``, shape (n, 2)."""
    x = as_state(x)
    t = np.asarray(times, dtype=float)
    y1, y2 = _propagate_arrays(p, x.x1, x.x2, t)
    return np.stack([y1, y2], axis=-1)


def eigenvalues(p: SystemParams) -> tuple[complex, complex]:
    """Roots of m s^2 + c s + k, ordered (+imag, -imag)."""
    return complex(-p.sigma, p.omega_d), complex(-p.sigma, -p.omega_d)


def _strictly_same_sign(a: float, b: float) -> bool:
    # x1*x2 > 0 without underflow of the product
    return (a > 0.0 and b > 0.0) or (a < 0.0 and b < 0.0)


def in_flow_set(p: SystemParams, x: Sequence[float]) -> bool:
    x1, x2 = x
    return not _strictly_same_sign(x1, x2) or abs(x1) >= p.theta_hat


def in_jump_set(x: Sequence[float]) -> bool:
    return x[0] == 0.0


def in_C0(p: SystemParams, x: Sequence[float]) -> bool:
    """Membership in the curve of post-jump and turning states.

    Two vertical pieces ``|x1| = theta_hat`` with ``x1*x2 >= 0`` joined by
    the segment ``x2 = 0, |x1| <= theta_hat``.
    """
    x1, x2 = x
    opposite = (x1 > 0.0 and x2 < 0.0) or (x1 < 0.0 and x2 > 0.0)
    vertical = abs(x1) == p.theta_hat and not opposite
    horizontal = abs(x1) <= p.theta_hat and x2 == 0.0
    return vertical or horizontal


def apply_jump(p: SystemParams, x: Sequence[float], branch: int | None = None) -> State:
    """Reset of the anchor: ``(0, x2) -> (theta_hat*sign(x2), x2)``.

    At ``x2 == 0`` the sign is set valued and ``branch`` (+1 or -1) picks
    the image.
    """
    x = as_state(x)
    if x.x2 > 0.0:
        s = 1.0
    elif x.x2 < 0.0:
        s = -1.0
    else:
        if branch not in (1, -1):
            raise MissingBranch("x2 == 0: pass branch=+1 or branch=-1")
        s = float(branch)
    return State(p.theta_hat * s, x.x2)

