"""Convergence of the three solvers on a travelling solitary wave.

Short version of the standard 1D accuracy experiment: evolve a boosted
wave (omega = 0.8, v = -0.2) to t = 5 on three meshes and print the L2
error tables.  All three time discretisations should show order q + 1.
"""

from dataclasses import replace

from diracdg.diagnostics import order_table
from diracdg.runner import RunConfig, WaveSpec, converge_study

base = RunConfig(
    label="accuracy-demo", dim=1, scheme="rkdg", q=2,
    xmin=-60.0, xmax=60.0, nx=50, tfinal=5.0,
    waves=(WaveSpec(omega=0.8, v=-0.2, x0=5.0),),
    history_every=100_000,
)

cells = [50, 100, 200]
for scheme in ("rkdg", "lwdg", "tsdg"):
    study = converge_study(replace(base, scheme=scheme), cells)
    print(f"\n{scheme}, P{base.q}:")
    print(order_table(study["cells"], study["l2"], label="L2 error"))
