"""Backward/forward energies, flow dissipation and the Lyapunov function.

For a state ``x`` on a flow arc, the arc is followed backward to C0 and
forward to the jump set.  The kinetic and potential energies at the
backward end and the kinetic energy at the forward end are constant along
the arc, and so is everything built from them.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .dynamics import State, SystemParams, as_state, flow_samples, in_flow_set, in_jump_set
from .errors import DomainError
from .events import CrossingResult, time_back_to_C0, time_to_D


def total_energy(p: SystemParams, x: Sequence[float]) -> float:
    x1, x2 = x
    return 0.5 * p.m * x2 * x2 + 0.5 * p.k * x1 * x1


@dataclass(frozen=True)
class EnergySplit:
    """Energies at the two ends of the flow arc through a state.

    ``Pi`` is the area swept between the arc, C0 and the jump set; times
    ``c`` it is the energy dissipated along the arc.
    """

    T_b: float
    U_b: float
    T_f: float
    c: float
    U_hat: float
    backward: CrossingResult
    forward: CrossingResult

    @property
    def E_b(self) -> float:
        return self.T_b + self.U_b

    @property
    def E_f(self) -> float:
        return self.T_f

    @property
    def Pi(self) -> float:
        return (self.E_b - self.E_f) / self.c

    @property
    def arc_duration(self) -> float:
        return self.backward.tau + self.forward.tau


def energy_split(p: SystemParams, x: Sequence[float]) -> EnergySplit:
    x = as_state(x)
    back = time_back_to_C0(p, x)
    fwd = time_to_D(p, x)
    xb, xf = back.state, fwd.state
    return EnergySplit(
        T_b=0.5 * p.m * xb.x2**2,
        U_b=0.5 * p.k * xb.x1**2,
        T_f=0.5 * p.m * xf.x2**2,
        c=p.c,
        U_hat=p.u_hat,
        backward=back,
        forward=fwd,
    )


def dissipation(p: SystemParams, x: Sequence[float]) -> float:
    """Dissipation area of the arc through ``x`` from the energy difference."""
    return energy_split(p, x).Pi


def corner_dissipation(p: SystemParams) -> float:
    """Dissipation area of the arc leaving the C0 corner (theta_hat, 0)."""
    return dissipation(p, (p.theta_hat, 0.0))


def orbit_dissipation(p: SystemParams) -> float:
    """Dissipation area that exactly balances one reset: U_hat / c."""
    return p.u_hat / p.c


def dissipation_area_oracle(p: SystemParams, x: Sequence[float], n_steps: int = 100_000) -> float:
    """Trapezoid quadrature of the integral of x2(t)**2 along the arc through ``x``.

    Runs from the backward C0 intersection to the forward jump-set
    intersection on ``n_steps`` uniform substeps of the exact flow.  It
    uses no energy bookkeeping, so it checks :func:`dissipation`
    independently.
    """
    if n_steps < 100:
        raise ValueError("n_steps must be at least 100")
    x = as_state(x)
    back = time_back_to_C0(p, x)
    fwd = time_to_D(p, x)
    duration = back.tau + fwd.tau
    t = np.linspace(0.0, duration, n_steps + 1)
    xs = flow_samples(p, back.state, t)
    return float(np.trapezoid(xs[:, 1] ** 2, t))


def _check_domain(p: SystemParams, x: State) -> None:
    if x.x1 == 0.0 and x.x2 == 0.0:
        raise DomainError("V is unbounded at the origin")
    if not (in_flow_set(p, x) or in_jump_set(x)):
        raise DomainError(f"({x.x1:.6g}, {x.x2:.6g}) lies outside the flow and jump sets")


def lyapunov_from_split(split: EnergySplit) -> float:
    return (split.c * split.Pi - split.U_hat) ** 2 / split.U_b


def lyapunov(p: SystemParams, x: Sequence[float]) -> float:
    """V(x) = (c*Pi(x) - U_hat)**2 / U_b(x).

    Zero exactly on the periodic orbit, constant along flow arcs and
    strictly smaller after each jump off the orbit.
    """
    x = as_state(x)
    _check_domain(p, x)
    return lyapunov_from_split(energy_split(p, x))


def lyapunov_energy_form(p: SystemParams, x: Sequence[float]) -> float:
    """Same V written with the raw energies, (U_b + T_b - T_f - U_hat)**2 / U_b."""
    x = as_state(x)
    _check_domain(p, x)
    s = energy_split(p, x)
    return (s.U_b + s.T_b - s.T_f - s.U_hat) ** 2 / s.U_b
