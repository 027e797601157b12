"""
Numerical certificates
======================

Sampling checks behind the stability argument: the dissipation identity
against trapezoid quadrature, V constant along flows and strictly smaller
after resets, the orbit's fixed point and energy balance, and convergence
of simulated solutions.  The same seed always gives the same report.
"""
from __future__ import annotations

import sys

from resetorbit import make_params
from resetorbit.verify import (
    certify_convergence,
    certify_lemma1,
    certify_lyapunov,
    certify_orbit,
    reports_to_text,
)

seed = int(sys.argv[1]) if len(sys.argv) > 1 else 42
p = make_params(1.0, 0.3, 1.0, 0.3)

flow, jump = certify_lyapunov(p, seed=seed + 1)
reports = [
    certify_lemma1(p, seed=seed),
    flow,
    jump,
    certify_orbit(p),
    certify_convergence(p, [(0.1, -0.05), (0.5, -0.05), (-1.5, 0.2)]),
]
print(reports_to_text(reports))
print("all passed" if all(r.passed for r in reports) else "SOME CHECKS FAILED")
