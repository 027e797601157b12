"""Sampling certificates for the dissipation identity, the Lyapunov function and the orbit.

Each check returns a :class:`CertReport` with the worst residual it saw
and the tolerance it was held to.  Sampling uses a seeded PCG64 generator,
so a report depends only on its inputs.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .dynamics import State, SystemParams, apply_jump, in_flow_set, propagate
from .energy import (
    corner_dissipation,
    dissipation_area_oracle,
    energy_split,
    lyapunov,
    lyapunov_from_split,
    orbit_dissipation,
)
from .events import time_to_D
from .hybridsim import simulate
from .orbit import distance_to_attractor, find_periodic_orbit, return_gap_scan

NEAR_ATTRACTOR_BAND = 1e-6


@dataclass
class CertReport:
    name: str
    n_samples: int
    worst_residual: float
    tolerance: float
    passed: bool
    strict: bool = False
    offending: list[dict] = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @classmethod
    def build(cls, name, n_samples, worst, tol, strict=False, offending=(), details=None, extra_ok=True):
        ok = (worst < tol) if strict else (worst <= tol)
        return cls(name, int(n_samples), float(worst), float(tol), bool(ok and extra_ok), strict,
                   list(offending), dict(details or {}))

    def to_dict(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        rel = "<" if self.strict else "<="
        status = "PASS" if self.passed else "FAIL"
        lines = [
            f"{self.name:<24} {status}  n={self.n_samples:<5d} "
            f"worst={self.worst_residual: .3e} {rel} tol={self.tolerance:.1e}"
        ]
        for k, v in sorted(self.details.items()):
            lines.append(f"    {k:<22} {v}")
        for o in self.offending[:5]:
            lines.append(f"    offending: {o}")
        return "\n".join(lines)


def reports_to_json(reports: Iterable[CertReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True) + "\n"


def reports_to_text(reports: Iterable[CertReport]) -> str:
    return "\n".join(r.to_text() for r in reports) + "\n"


def sample_flow_states(
    rng: np.random.Generator, p: SystemParams, n: int, half_width: float = 2.0, r_min: float = 0.05
) -> list[State]:
    """Rejection-sample ``n`` states of the flow set in a centered box, away from the origin."""
    out: list[State] = []
    while len(out) < n:
        x1, x2 = rng.uniform(-half_width, half_width, size=2)
        x = State(float(x1), float(x2))
        if x.norm >= r_min and in_flow_set(p, x):
            out.append(x)
    return out


def certify_lemma1(
    p: SystemParams,
    n_samples: int = 100,
    seed: int = 42,
    n_steps: int = 100_000,
    tol: float = 1e-5,
    states: Sequence[State] | None = None,
) -> CertReport:
    """Dissipated energy equals c times the swept area, via quadrature vs energy difference."""
    if states is None:
        states = sample_flow_states(np.random.default_rng(seed), p, n_samples)
    worst, offending = 0.0, []
    for x in states:
        split = energy_split(p, x)
        area = dissipation_area_oracle(p, x, n_steps)
        res = abs(p.c * area - (split.E_b - split.E_f)) / split.E_b
        worst = max(worst, res)
        if res > tol:
            offending.append({"x": list(x), "residual": res})
    return CertReport.build("dissipation-identity", len(states), worst, tol, offending=offending,
                            details={"n_steps": n_steps, "seed": seed})


def _regime(pi: float, pi0: float, pi_star: float) -> str:
    if pi > pi_star:
        return "above-orbit"
    if pi > pi0:
        return "between"
    return "below-corner"


def sample_jump_states(
    rng: np.random.Generator, p: SystemParams, n: int, v_star: float, band: float = NEAR_ATTRACTOR_BAND
) -> list[State]:
    """States (0, x2) stratified over the three dissipation regimes, off the orbit band."""
    r0 = abs(time_to_D(p, (p.theta_hat, 0.0)).state.x2)
    strata = [(1e-2 * r0, r0), (r0, v_star), (v_star, 10.0 * v_star)]
    pi_star = orbit_dissipation(p)
    out: list[State] = []
    i = 0
    while len(out) < n:
        lo, hi = strata[i % 3]
        speed = math.exp(rng.uniform(math.log(lo), math.log(hi)))
        x = State(0.0, speed if rng.random() < 0.5 else -speed)
        if abs(energy_split(p, x).Pi - pi_star) > band:
            out.append(x)
            i += 1
    return out


def certify_lyapunov(
    p: SystemParams,
    n_flow: int = 100,
    n_jump: int = 300,
    seed: int = 7,
    flow_tol: float = 1e-8,
    points_per_arc: int = 16,
    band: float = NEAR_ATTRACTOR_BAND,
) -> tuple[CertReport, CertReport]:
    """Constancy of V along flow arcs and strict decrease of V across jumps."""
    rng = np.random.default_rng(seed)

    worst, offending = 0.0, []
    for x in sample_flow_states(rng, p, n_flow):
        v0 = lyapunov(p, x)
        tau = time_to_D(p, x).tau
        dts = rng.uniform(0.0, tau, size=points_per_arc)
        var = max(abs(lyapunov(p, propagate(p, x, float(dt))) - v0) for dt in dts) / v0
        worst = max(worst, var)
        if var > flow_tol:
            offending.append({"x": list(x), "relative_variation": var})
    flow = CertReport.build("flow-constancy", n_flow, worst, flow_tol, offending=offending,
                            details={"points_per_arc": points_per_arc, "seed": seed})

    v_star = find_periodic_orbit(p, n_samples=16).v_star
    pi0, pi_star = corner_dissipation(p), orbit_dissipation(p)
    counts = {"above-orbit": 0, "between": 0, "below-corner": 0}
    worst, offending = -math.inf, []
    for x in sample_jump_states(rng, p, n_jump, v_star, band):
        split = energy_split(p, x)
        margin = lyapunov(p, apply_jump(p, x)) - lyapunov_from_split(split)
        counts[_regime(split.Pi, pi0, pi_star)] += 1
        worst = max(worst, margin)
        if margin >= 0.0:
            offending.append({"x": list(x), "margin": margin})
    jump = CertReport.build("jump-decrease", n_jump, worst, 0.0, strict=True, offending=offending,
                            details={"regime_counts": counts, "Pi0": pi0, "Pi_star": pi_star, "band": band},
                            extra_ok=all(counts.values()))
    return flow, jump


def certify_orbit(p: SystemParams, n_scan: int = 50, tol: float = 1e-10) -> CertReport:
    """Fixed point and energy balance of the orbit, plus a monotonicity scan of g."""
    orbit = find_periodic_orbit(p)
    vs, g = return_gap_scan(p, orbit.v_star, n_scan)
    sign_changes = int(np.count_nonzero(np.diff(np.sign(g)) != 0))
    monotone = bool(np.all(np.diff(g) < 0.0))
    worst = max(orbit.fixed_point_residual, orbit.balance_residual)
    return CertReport.build(
        "periodic-orbit", n_scan, worst, tol,
        details={"v_star": orbit.v_star, "tau_star": orbit.tau_star, "sign_changes": sign_changes,
                 "monotone": monotone, "balance_residual": orbit.balance_residual,
                 "fixed_point_residual": orbit.fixed_point_residual},
        extra_ok=monotone and sign_changes == 1,
    )


def certify_convergence(
    p: SystemParams,
    x0_list: Sequence[Sequence[float]],
    j_max: int = 100,
    dist_tol: float = 1e-3,
    band: float = NEAR_ATTRACTOR_BAND,
) -> CertReport:
    """Each solution's V drops at every jump off the orbit band and its distance to the orbit falls below ``dist_tol``.

    The residual is the worst, over initial conditions, of the smallest
    post-jump distance reached within ``j_max`` jumps.
    """
    orbit = find_periodic_orbit(p)
    pi_star = orbit_dissipation(p)
    worst, offending, first_hits = 0.0, [], []
    for x0 in x0_list:
        arc = simulate(p, None, x0, j_max=j_max, n_samples=2)
        best, hit = math.inf, None
        for i, jp in enumerate(arc.jumps):
            split = energy_split(p, jp.pre)
            v_pre = lyapunov_from_split(split)
            v_post = lyapunov(p, jp.post)
            if abs(split.Pi - pi_star) > band and not v_post < v_pre:
                offending.append({"x0": list(x0), "jump": i, "V_pre": v_pre, "V_post": v_post})
            d = distance_to_attractor(p, jp.post, orbit)
            if d < best:
                best = d
            if hit is None and d < dist_tol:
                hit = i + 1
        worst = max(worst, best)
        first_hits.append(hit)
    return CertReport.build(
        "convergence", len(x0_list), worst, dist_tol, offending=offending,
        details={"j_max": j_max, "jumps_to_tolerance": first_hits, "band": band},
        extra_ok=not offending,
    )
