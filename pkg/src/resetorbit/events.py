"""First crossings of the exact flow with the jump set and with C0.

Every search marches along the closed-form flow with a fixed number of
samples per damped period to bracket a sign change, then bisects on the
bracket.  Roots of ``x1`` and of ``x2`` along the spiral are simple and
half a period apart, so the scan cannot step over a pair of them.

Crossings with the vertical lines ``|x1| = theta_hat`` can be tangent.
They are never scanned directly: between two consecutive zeros of ``x2``
the deflection ``x1`` is monotone, so each such monotone piece is checked
against the line from its endpoint values alone.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .dynamics import (
    State,
    SystemParams,
    _propagate_arrays,
    _propagate_scalar,
    as_state,
    in_C0,
    propagate,
)
from .errors import HorizonExceeded, OriginInput

ATOL_EVENT = 1e-11
SCAN_PER_PERIOD = 256
HORIZON_PERIODS = 50
RTOL_TIME = 1e-13


class Piece(str, Enum):
    D = "D"
    C0_VERTICAL_PLUS = "C0-vertical-plus"
    C0_VERTICAL_MINUS = "C0-vertical-minus"
    C0_HORIZONTAL = "C0-horizontal"
    GUARD = "guard"


@dataclass(frozen=True)
class CrossingResult:
    tau: float
    state: State
    piece: Piece


def _component(p: SystemParams, x: State, direction: float, t, comp: int):
    if isinstance(t, float):
        return _propagate_scalar(p, x.x1, x.x2, direction * t)[comp]
    return _propagate_arrays(p, x.x1, x.x2, direction * t)[comp]


def _scan_bracket(p, x, direction, comp, offset, s_ref, t_start, t_end):
    """First grid interval after ``t_start`` on which ``s_ref*(x_comp - offset)`` stops being positive."""
    h = p.period / SCAN_PER_PERIOD
    k = np.arange(1, SCAN_PER_PERIOD + 1, dtype=float)
    lo = t_start
    while lo < t_end:
        times = lo + h * k
        vals = s_ref * (_component(p, x, direction, times, comp) - offset)
        hit = np.flatnonzero(vals <= 0.0)
        if hit.size:
            i = hit[0]
            if times[i] > t_end and s_ref * (_component(p, x, direction, float(t_end), comp) - offset) > 0.0:
                break
            left = lo if i == 0 else times[i - 1]
            return float(left), float(times[i])
        lo = float(times[-1])
    raise HorizonExceeded(
        f"no crossing within {t_end:.6g} s from ({x.x1:.6g}, {x.x2:.6g})"
    )


def _bisect(g, lo: float, hi: float, s_ref: float) -> float:
    """Shrink [lo, hi] with s_ref*g(lo) > 0 >= s_ref*g(hi) around the root."""
    glo, ghi = g(lo), g(hi)
    if ghi == 0.0:
        return hi
    while hi - lo > RTOL_TIME * hi:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        gm = g(mid)
        if s_ref * gm > 0.0:
            lo, glo = mid, gm
        else:
            hi, ghi = mid, gm
            if gm == 0.0:
                return mid
    return lo if abs(glo) < abs(ghi) else hi


def _sign(v: float) -> float:
    return 1.0 if v > 0.0 else -1.0


def _check_nonzero(x: State) -> None:
    if x.x1 == 0.0 and x.x2 == 0.0:
        raise OriginInput("the origin never reaches the jump set or C0")


def _horizon(p: SystemParams, horizon: float | None) -> float:
    return HORIZON_PERIODS * p.period if horizon is None else float(horizon)


def time_to_D(p: SystemParams, x: Sequence[float], horizon: float | None = None) -> CrossingResult:
    """Smallest forward flow time after which ``x1 = 0``.

    The returned state has ``x1`` set to exactly 0.
    """
    x = as_state(x)
    _check_nonzero(x)
    if x.x1 == 0.0:
        return CrossingResult(0.0, x, Piece.D)
    s_ref = _sign(x.x1)
    lo, hi = _scan_bracket(p, x, 1.0, 0, 0.0, s_ref, 0.0, _horizon(p, horizon))
    tau = _bisect(lambda t: float(_component(p, x, 1.0, t, 0)), lo, hi, s_ref)
    y = propagate(p, x, tau)
    return CrossingResult(tau, State(0.0, y.x2), Piece.D)


def _next_x2_zero(p, x, direction, t0, t_end):
    """Next zero of x2 strictly after ``t0`` and the sign of x2 before it."""
    h = p.period / SCAN_PER_PERIOD
    x2_0 = float(_component(p, x, direction, t0, 1))
    if t0 > 0.0 or x2_0 == 0.0:
        # t0 is itself a refined zero: its sign is rounding noise
        x2_0 = float(_component(p, x, direction, t0 + h, 1))
    s2 = _sign(x2_0)
    g = lambda t: float(_component(p, x, direction, t, 1))  # noqa: E731
    lo, hi = _scan_bracket(p, x, direction, 1, 0.0, s2, t0, t_end)
    t1 = _bisect(g, lo, hi, s2)
    if t1 <= t0:
        # x2 at the start is a zero up to rounding; take the sign of the piece that follows
        s2 = _sign(g(t0 + h))
        lo, hi = _scan_bracket(p, x, direction, 1, 0.0, s2, t0 + h, t_end)
        t1 = _bisect(g, lo, hi, s2)
    return t1, s2


def _line_crossing(p, x, direction, t0, t1, target):
    """Time in (t0, t1] where the monotone x1 reaches ``target``, or None."""
    g = lambda t: float(_component(p, x, direction, t, 0)) - target  # noqa: E731
    g0, g1 = g(t0), g(t1)
    if g0 == 0.0 or (g0 > 0.0) == (g1 > 0.0) and g1 != 0.0:
        return None
    return _bisect(g, t0, t1, _sign(g0))


def time_back_to_C0(
    p: SystemParams, x: Sequence[float], horizon: float | None = None
) -> CrossingResult:
    """Smallest backward flow time after which the state lies on C0.

    Corner states ``(+-theta_hat, 0)`` are reported as vertical.
    """
    x = as_state(x)
    _check_nonzero(x)
    th = p.theta_hat
    if in_C0(p, x):
        if abs(x.x1) == th:
            piece = Piece.C0_VERTICAL_PLUS if x.x1 > 0 else Piece.C0_VERTICAL_MINUS
        else:
            piece = Piece.C0_HORIZONTAL
        return CrossingResult(0.0, x, piece)
    t_end = _horizon(p, horizon)
    t0 = 0.0
    while True:
        t1, s2 = _next_x2_zero(p, x, -1.0, t0, t_end)
        # x2 keeps sign s2 on (t0, t1); only the vertical piece with x1*x2 >= 0 qualifies
        target = s2 * th
        tc = _line_crossing(p, x, -1.0, t0, t1, target)
        if tc is not None:
            y = propagate(p, x, -tc)
            piece = Piece.C0_VERTICAL_PLUS if target > 0 else Piece.C0_VERTICAL_MINUS
            return CrossingResult(tc, State(target, y.x2), piece)
        y = propagate(p, x, -t1)
        if abs(y.x1) <= th:
            return CrossingResult(t1, State(y.x1, 0.0), Piece.C0_HORIZONTAL)
        t0 = t1


def time_to_guard(
    p: SystemParams,
    x: Sequence[float],
    eps_phi: float,
    guard_sign: float = -1.0,
    horizon: float | None = None,
) -> CrossingResult:
    """Forward time to the offset-law jump line ``x1 = guard_sign*eps_phi*sign(x2)``.

    Only a crossing in the direction of motion counts; a state already on
    its sign-matched line returns ``tau = 0``.
    """
    x = as_state(x)
    _check_nonzero(x)
    if x.x2 != 0.0 and x.x1 == guard_sign * eps_phi * _sign(x.x2):
        return CrossingResult(0.0, x, Piece.GUARD)
    t_end = _horizon(p, horizon)
    t0 = 0.0
    while True:
        t1, s2 = _next_x2_zero(p, x, 1.0, t0, t_end)
        target = guard_sign * eps_phi * s2
        # x1 moves in direction s2 on this piece; it must start short of the line
        x1_start = float(_component(p, x, 1.0, t0, 0))
        if s2 * (target - x1_start) > 0.0:
            tc = _line_crossing(p, x, 1.0, t0, t1, target)
            if tc is not None:
                y = propagate(p, x, tc)
                return CrossingResult(tc, State(target, y.x2), Piece.GUARD)
        t0 = t1

