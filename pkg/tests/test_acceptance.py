"""The ten acceptance checks, each at its stated tolerance.

Every test prints one ``[acceptance N] PASS|FAIL ...`` line, visible
without ``-s``.
"""
import io
import itertools
import json
import time

import numpy as np
import pytest

from resetorbit import (
    ResetLaw,
    distance_to_attractor,
    eigenvalues,
    find_periodic_orbit,
    in_flow_set,
    make_params,
    propagate,
    simulate,
)
from resetorbit.cli import cmd_verify, load_config
from resetorbit.energy import energy_split, lyapunov, orbit_dissipation
from resetorbit.verify import NEAR_ATTRACTOR_BAND, certify_lemma1, certify_lyapunov, certify_orbit

from oracles import rk4_fixed_step

P2 = make_params(1.0, 0.3, 1.0, 0.2)
P3 = make_params(1.0, 0.3, 1.0, 0.3)


@pytest.fixture
def report(capsys):
    def emit(n, ok, msg):
        with capsys.disabled():
            print(f"\n[acceptance {n:2d}] {'PASS' if ok else 'FAIL'}  {msg}")
        assert ok, msg

    return emit


def test_01_eigenvalues(report):
    t0 = time.perf_counter()
    s1, s2 = eigenvalues(make_params(1.0, 0.3, 1.0, 0.2))
    dt = time.perf_counter() - t0
    err = max(abs(s1.real + 0.15), abs(s1.imag - 0.9887), abs(s2.real + 0.15), abs(s2.imag + 0.9887))
    report(1, err <= 1e-3 and dt < 1e-3, f"eigenvalues {s1:.6f}, {s2:.6f}; max err {err:.2e} <= 1e-3; {dt * 1e3:.3f} ms")


def test_02_dissipation_identity(report):
    r = certify_lemma1(P2, n_samples=100, seed=42, n_steps=100_000, tol=1e-5)
    report(2, r.passed and r.n_samples == 100,
           f"dissipation identity over {r.n_samples} states: worst {r.worst_residual:.2e} <= 1e-5")


def test_03_flow_constancy(report):
    flow, _ = certify_lyapunov(P2, n_flow=100, n_jump=3, seed=7, flow_tol=1e-8)
    report(3, flow.passed and flow.n_samples == 100,
           f"V constant on {flow.n_samples} arcs: worst relative variation {flow.worst_residual:.2e} <= 1e-8")


def test_04_jump_decrease(report):
    _, jump = certify_lyapunov(P2, n_flow=1, n_jump=300, seed=7, band=1e-6)
    counts = jump.details["regime_counts"]
    ok = jump.passed and jump.n_samples == 300 and all(counts.values())
    report(4, ok, f"V drops across {jump.n_samples} jumps: worst V(G(x)) - V(x) = {jump.worst_residual:.2e} < 0; "
                  f"regimes {counts}")


def test_05_orbit(report):
    msgs, ok = [], True
    for p in (P2, P3):
        t0 = time.perf_counter()
        orbit = find_periodic_orbit(p)
        dt = time.perf_counter() - t0
        cert = certify_orbit(p, n_scan=50, tol=1e-10)
        ok &= orbit.balance_residual <= 1e-10 and cert.passed and dt < 1.0
        msgs.append(f"theta_hat={p.theta_hat}: v*={orbit.v_star:.12f} balance {orbit.balance_residual:.1e} "
                    f"sign changes {cert.details['sign_changes']} ({dt:.2f} s)")
    report(5, ok, "; ".join(msgs))


def test_06_convergence(report):
    orbit = find_periodic_orbit(P3)
    pi_star = orbit_dissipation(P3)
    msgs, ok = [], True
    t0 = time.perf_counter()
    for x0 in [(0.1, -0.05), (0.5, -0.05)]:
        arc = simulate(P3, None, x0, j_max=100, n_samples=2)
        states = [arc.initial] + [jp.post for jp in arc.jumps]
        V = [lyapunov(P3, x) for x in states]
        # strict decrease is owed at every jump that starts off the attractor
        off = [abs(energy_split(P3, x).Pi - pi_star) > NEAR_ATTRACTOR_BAND for x in states[:-1]]
        decreasing = all(b < a for a, b, o in zip(V, V[1:], off) if o)
        d = [distance_to_attractor(P3, x, orbit) for x in states[1:]]
        hit = next((i + 1 for i, v in enumerate(d) if v < 1e-3), None)
        ok &= decreasing and hit is not None
        msgs.append(f"x0={x0}: V strictly decreasing over {sum(off)} off-attractor jumps, "
                    f"distance < 1e-3 after {hit} jumps")
    dt = time.perf_counter() - t0
    report(6, ok and dt < 10.0, "; ".join(msgs) + f" ({dt:.2f} s)")


def test_07_orbit_invariance(report):
    orbit = find_periodic_orbit(P2)
    t0 = time.perf_counter()
    arc = simulate(P2, None, orbit.post_jump_state, j_max=50, n_samples=2)
    dt = time.perf_counter() - t0
    err = max(max(abs(abs(jp.post.x1) - P2.theta_hat), abs(abs(jp.post.x2) - orbit.v_star)) for jp in arc.jumps)
    ok = len(arc.jumps) == 50 and err <= 1e-8 and dt < 1.0
    report(7, ok, f"50 jumps from (theta_hat, v*): max deviation {err:.2e} <= 1e-8 ({dt:.2f} s)")


def test_08_exact_flow_fidelity(report):
    rng = np.random.default_rng(8)
    worst = 0.0
    for _ in range(20):
        x = tuple(rng.uniform(-2.0, 2.0, size=2))
        ref = rk4_fixed_step(1.0, 0.3, 1.0, x, 5.0, h=1e-6)
        worst = max(worst, float(np.max(np.abs(np.subtract(propagate(P2, x, 5.0), ref)))))
    report(8, worst <= 1e-8, f"closed form vs RK4 (h=1e-6) over 5 s on 20 states: worst {worst:.2e} <= 1e-8")


def test_09_offset_law(report):
    p = make_params(1.0, 0.3, 1.0, 0.6)
    law = ResetLaw.offset(0.2)
    rng = np.random.default_rng(9)
    t0 = time.perf_counter()
    finals = []
    for _ in range(10):
        r, a = rng.uniform(0.8, 2.0), rng.uniform(0.0, 2 * np.pi)
        arc = simulate(p, law, (r * np.cos(a), r * np.sin(a)), j_max=100, n_samples=2)
        assert len(arc.jumps) == 100 and not arc.stalled
        post = arc.jumps[-1].post
        # the cycle is centrally symmetric: compare on the half with x2 > 0
        finals.append(np.array(post) * np.sign(post.x2))
    dt = time.perf_counter() - t0
    spread = max(float(np.max(np.abs(a - b))) for a, b in itertools.combinations(finals, 2))
    report(9, spread <= 1e-4 and dt < 30.0,
           f"10 starts, post-jump state after 100 jumps {finals[0].round(10)}: pairwise spread {spread:.2e} <= 1e-4 "
           f"({dt:.2f} s)")


def test_10_verify_determinism(report, tmp_path):
    blobs = []
    for name in ("a", "b"):
        cfg = load_config(None, {"out": str(tmp_path / name), "seed": 42})
        ok, paths = cmd_verify(cfg, io.StringIO())
        blobs.append(paths[0].read_bytes())
    same = blobs[0] == blobs[1]
    n = len(json.loads(blobs[0]))
    report(10, same and ok, f"two verify runs, seed 42: {n} reports, JSON byte-identical = {same}")
