"""
Resonant drive: weaker coupling keeps the overlap near 1/2
==========================================================

Sweep the Rabi frequency at zero detuning and record how far the GHZ
overlap strays from 1/2, then write the CSV files and the SVG plot.
"""

import numpy as np

from ghzdots.runner import emit_csv, emit_svg, figure_config, run_simulation

cfg = figure_config("fig1")
trajectories = run_simulation(cfg)

# %%
for traj in trajectories:
    p = traj.p_ghz
    d = np.diff(p)
    first_turn = np.nonzero(np.sign(d[1:]) != np.sign(d[:-1]))[0][0] + 1
    print(f"{traj.label:<18s} p_ghz in [{p.min():.4f}, {p.max():.4f}]  "
          f"max|p-0.5|={np.max(np.abs(p - 0.5)):.4f}  first turn near t={traj.times[first_turn]:.1f} fs")

# %%
# Probability left in the single- and biexciton levels tells a real GHZ-like
# state apart from the bare vacuum, which also has overlap 1/2.
weak = trajectories[-1]
print("Omega=0.01, largest |B1|^2 + |B2|^2:", weak.populations[:, 1:3].sum(axis=1).max())

# %%
for traj in trajectories:
    emit_csv(traj, f"fig1_{traj.label.replace('=', '_')}.csv")
emit_svg(trajectories, "fig1.svg", title="Resonant drive", legend_title="sweep: omega_rabi")
