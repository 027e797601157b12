"""
The Lyapunov function over the phase plane
==========================================

V compares the energy a flow arc dissipates with the energy one reset
injects.  It is zero on the periodic orbit, blows up near the origin and
is undefined in the two open wedges where the flow is not allowed.
"""
from __future__ import annotations

import sys
from pathlib import Path

import numpy as np

from resetorbit import make_params
from resetorbit.cli import lyapunov_grid
from resetorbit.plotting import field_plot

out = Path(sys.argv[1] if len(sys.argv) > 1 else "demo_out")
out.mkdir(exist_ok=True)

p = make_params(1.0, 0.3, 1.0, 0.3)
x1, x2, V = lyapunov_grid(p, {"x1": [-1.0, 1.0, 81], "x2": [-1.0, 1.0, 81]})

defined = np.isfinite(V)
print(f"{defined.sum()} of {V.size} grid points lie in the domain of V")
i, j = np.unravel_index(np.nanargmin(V), V.shape)
print(f"smallest V = {V[i, j]:.3e} at ({x1[i]:+.3f}, {x2[j]:+.3f}), next to the orbit")

field_plot(out / "lyapunov_field.svg", p, x1, x2, V)
print("wrote", out / "lyapunov_field.svg")
