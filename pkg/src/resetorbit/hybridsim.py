"""Forward simulation of the reset system on hybrid time domains.

A solution alternates exact flow segments and jumps.  Jumps are taken as
soon as the flow reaches the jump set; flowing through it, though
permitted by the hybrid formalism, would never trigger the reset.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

import numpy as np

from .dynamics import State, SystemParams, apply_jump, as_state, flow_samples, in_flow_set, in_jump_set
from .errors import HorizonExceeded, InvalidStart
from .events import HORIZON_PERIODS, time_to_D, time_to_guard

DEFAULT_SEGMENT_SAMPLES = 512


class LawKind(str, Enum):
    CENTERED = "centered"
    OFFSET = "offset"


class OriginPolicy(str, Enum):
    FLOW = "flow"
    JUMP_PLUS = "jump+"
    JUMP_MINUS = "jump-"


@dataclass(frozen=True)
class ResetLaw:
    """Which reset fires, and where.

    ``CENTERED`` jumps on ``x1 = 0`` to ``(theta_hat*sign(x2), x2)``.
    ``OFFSET`` jumps on the line ``x1 = guard_sign*eps_phi*sign(x2)`` to
    ``(x1 + theta_hat*sign(x2), x2)``.  With the default ``guard_sign=-1``
    each reset injects ``k*theta_hat*(theta_hat - 2*eps_phi)/2``, which is
    why ``theta_hat >= 2*eps_phi`` is required.  The offset flow set is
    taken to be the whole plane.
    """

    kind: LawKind = LawKind.CENTERED
    eps_phi: float = 0.0
    guard_sign: float = -1.0

    @classmethod
    def centered(cls) -> ResetLaw:
        return cls(LawKind.CENTERED)

    @classmethod
    def offset(cls, eps_phi: float, guard_sign: float = -1.0) -> ResetLaw:
        return cls(LawKind.OFFSET, float(eps_phi), float(guard_sign))

    def check(self, p: SystemParams) -> None:
        if self.kind is LawKind.OFFSET:
            if not self.eps_phi > 0.0:
                raise ValueError("offset law needs eps_phi > 0")
            if p.theta_hat < 2.0 * self.eps_phi:
                raise ValueError(
                    f"offset law needs theta_hat >= 2*eps_phi, got {p.theta_hat} < {2 * self.eps_phi}"
                )
            if self.guard_sign not in (1.0, -1.0):
                raise ValueError("guard_sign must be +1 or -1")

    def in_jump_set(self, x: State) -> bool:
        if self.kind is LawKind.CENTERED:
            return in_jump_set(x)
        return x.x2 != 0.0 and x.x1 == self.guard_sign * self.eps_phi * math.copysign(1.0, x.x2)

    def jump(self, p: SystemParams, x: State, branch: int | None = None) -> State:
        if self.kind is LawKind.CENTERED:
            return apply_jump(p, x, branch)
        return State(x.x1 + p.theta_hat * math.copysign(1.0, x.x2), x.x2)

    def next_event(self, p: SystemParams, x: State, horizon: float | None = None):
        if self.kind is LawKind.CENTERED:
            return time_to_D(p, x, horizon)
        return time_to_guard(p, x, self.eps_phi, self.guard_sign, horizon)

    def as_dict(self) -> dict:
        return {"kind": self.kind.value, "eps_phi": self.eps_phi, "guard_sign": self.guard_sign}

    @classmethod
    def from_dict(cls, d: dict) -> ResetLaw:
        return cls(LawKind(d["kind"]), float(d.get("eps_phi", 0.0)), float(d.get("guard_sign", -1.0)))


@dataclass
class FlowSegment:
    j: int
    times: np.ndarray
    states: np.ndarray

    @property
    def t_start(self) -> float:
        return float(self.times[0])

    @property
    def t_end(self) -> float:
        return float(self.times[-1])

    @property
    def duration(self) -> float:
        return self.t_end - self.t_start

    @property
    def start(self) -> State:
        return State(float(self.states[0, 0]), float(self.states[0, 1]))

    @property
    def end(self) -> State:
        return State(float(self.states[-1, 0]), float(self.states[-1, 1]))


@dataclass(frozen=True)
class Jump:
    t: float
    j: int
    pre: State
    post: State


@dataclass
class HybridArc:
    """A solution: flow segments indexed by jump count, and the jumps between them.

    Segment ``j`` starts at the post-jump state of jump ``j - 1``.  Every
    segment but the last ends on the jump set.  ``stalled`` marks an arc
    whose last segment found no jump within the event search horizon.
    """

    initial: State
    segments: list[FlowSegment] = field(default_factory=list)
    jumps: list[Jump] = field(default_factory=list)
    law: ResetLaw = field(default_factory=ResetLaw)
    stalled: bool = False

    @property
    def domain(self) -> list[tuple[float, float, int]]:
        return [(s.t_start, s.t_end, s.j) for s in self.segments]

    @property
    def final(self) -> State:
        return self.segments[-1].end

    def post_jump_states(self) -> list[State]:
        return [jp.post for jp in self.jumps]

    def samples(self) -> np.ndarray:
        """Rows (t, j, x1, x2) for every stored sample, in hybrid-time order."""
        rows = [
            np.column_stack([s.times, np.full(len(s.times), float(s.j)), s.states])
            for s in self.segments
        ]
        return np.concatenate(rows, axis=0)

    def to_dict(self) -> dict:
        return {
            "initial": [self.initial.x1, self.initial.x2],
            "law": self.law.as_dict(),
            "stalled": self.stalled,
            "segments": [
                {
                    "j": s.j,
                    "t": s.times.tolist(),
                    "x1": s.states[:, 0].tolist(),
                    "x2": s.states[:, 1].tolist(),
                }
                for s in self.segments
            ],
            "jumps": [
                {"t": jp.t, "j": jp.j, "pre": list(jp.pre), "post": list(jp.post)}
                for jp in self.jumps
            ],
        }

    @classmethod
    def from_dict(cls, d: dict) -> HybridArc:
        segments = [
            FlowSegment(
                j=int(s["j"]),
                times=np.array(s["t"], dtype=float),
                states=np.column_stack([np.array(s["x1"], dtype=float), np.array(s["x2"], dtype=float)]),
            )
            for s in d["segments"]
        ]
        jumps = [
            Jump(float(jp["t"]), int(jp["j"]), State(*map(float, jp["pre"])), State(*map(float, jp["post"])))
            for jp in d["jumps"]
        ]
        return cls(State(*map(float, d["initial"])), segments, jumps, ResetLaw.from_dict(d["law"]),
                   bool(d.get("stalled", False)))


def _segment(p, x, j, t0, tau, end, n_samples, sample_dt) -> FlowSegment:
    if tau == 0.0:
        return FlowSegment(j, np.array([t0]), np.array([[x.x1, x.x2]]))
    if sample_dt is None:
        local = np.linspace(0.0, tau, max(int(n_samples), 2))
    else:
        local = np.append(np.arange(0.0, tau, sample_dt), tau)
    states = flow_samples(p, x, local)
    states[0] = x
    states[-1] = end
    return FlowSegment(j, t0 + local, states)


def simulate(
    p: SystemParams,
    law: ResetLaw | None,
    x0: Sequence[float],
    t_max: float = math.inf,
    j_max: int | None = None,
    origin_policy: OriginPolicy = OriginPolicy.FLOW,
    sample_dt: float | None = None,
    n_samples: int = DEFAULT_SEGMENT_SAMPLES,
) -> HybridArc:
    """Simulate until ordinary time ``t_max`` or ``j_max`` jumps, whichever comes first.

    Without ``sample_dt`` each flow segment carries ``n_samples`` states
    uniform in time.  A solution at the origin (the only centered-law
    state with x2 = 0 on the jump set) follows ``origin_policy``.
    """
    law = law or ResetLaw()
    law.check(p)
    x = as_state(x0)
    j_cap = math.inf if j_max is None else int(j_max)
    if math.isinf(t_max) and math.isinf(j_cap):
        raise ValueError("give a finite t_max or j_max")
    if law.kind is LawKind.CENTERED and not (in_flow_set(p, x) or in_jump_set(x)):
        raise InvalidStart(f"({x.x1:.6g}, {x.x2:.6g}) is outside the flow and jump sets")

    arc = HybridArc(initial=x, law=law)
    t, j = 0.0, 0
    at_origin_jump = law.kind is LawKind.CENTERED and origin_policy is not OriginPolicy.FLOW
    while True:
        if x.x1 == 0.0 and x.x2 == 0.0 and not (at_origin_jump and j < j_cap):
            if math.isinf(t_max):
                raise ValueError("a solution resting at the origin needs a finite t_max")
            end = x
            arc.segments.append(_segment(p, x, j, t, t_max - t, end, 2, None))
            break

        if law.in_jump_set(x) and j < j_cap:
            if not arc.segments or arc.segments[-1].j != j:
                arc.segments.append(_segment(p, x, j, t, 0.0, x, n_samples, sample_dt))
            branch = 1 if origin_policy is OriginPolicy.JUMP_PLUS else -1
            post = law.jump(p, x, branch)
            arc.jumps.append(Jump(t, j, x, post))
            x, j = post, j + 1
            continue

        search = HORIZON_PERIODS * p.period if math.isinf(t_max) else t_max - t
        try:
            hit = law.next_event(p, x, search)
        except HorizonExceeded:
            # without t_max this is only reachable under the offset law, inside the guard band
            hit = None
            arc.stalled = math.isinf(t_max)
        if hit is None or t + hit.tau >= t_max:
            tau = search if hit is None else t_max - t
            end = as_state(flow_samples(p, x, [tau])[0])
            arc.segments.append(_segment(p, x, j, t, tau, end, n_samples, sample_dt))
            break
        arc.segments.append(_segment(p, x, j, t, hit.tau, hit.state, n_samples, sample_dt))
        t += hit.tau
        x = hit.state
        if j >= j_cap:
            break
    return arc


def jump_times(arc: HybridArc) -> list[tuple[float, int]]:
    """Ordinary time of each jump with the counter ``j`` it jumps from."""
    return [(jp.t, jp.j) for jp in arc.jumps]
