"""2D convergence against a manufactured solution.

A Gaussian field u = t^4 exp(-5(x^2+y^2)) (c1, c2, 0, 0) is forced to be
the exact solution, which sidesteps the need for an exact nonlinear
solution in 2D.  Refine the mesh and watch the L2 error drop at order
q + 1.
"""

from dataclasses import replace

from diracdg.diagnostics import order_table
from diracdg.runner import converge_study, preset_config


def main():
    base = preset_config("ex43-mms")
    for q in (1, 2):
        study = converge_study(replace(base, q=q), [10, 20, 40])
        print(f"\nlwdg, P{q}, t = {base.tfinal}:")
        print(order_table(study["cells"], study["l2"], label="L2 error"))


if __name__ == "__main__":
    main()
