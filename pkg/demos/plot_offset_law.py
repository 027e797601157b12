"""
Resetting before the spring crosses zero
========================================

A variant resets on the line x1 = -eps_phi*sign(x2), a little before the
mass reaches the rest position, and shifts x1 by theta_hat in the
direction of motion.  With theta_hat >= 2*eps_phi every reset still adds
energy, and solutions from very different starts settle on one cycle.
"""
from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

from resetorbit import ResetLaw, make_params, simulate
from resetorbit.plotting import phase_plot

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)

p = make_params(1.0, 0.3, 1.0, 0.6)
law = ResetLaw.offset(0.2)
rng = np.random.default_rng(9)

arcs = []
for _ in range(5):
    r, a = rng.uniform(0.8, 2.0), rng.uniform(0.0, 2 * np.pi)
    arcs.append(simulate(p, law, (r * np.cos(a), r * np.sin(a)), j_max=40))

# %%
# Post-reset states after 40 resets, folded onto the upper half plane.
for arc in arcs:
    post = np.array(arc.jumps[-1].post)
    print(f"x0 = ({arc.initial.x1:+.3f}, {arc.initial.x2:+.3f}) -> {post * np.sign(post[1])}")

phase_plot(out / "offset_law.svg", p, arcs[:3], law=law)
print("wrote", out / "offset_law.svg")
