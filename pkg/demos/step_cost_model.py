"""Predicted per-step arithmetic cost of the three solvers.

Counts come from the straight-line kernels on J cells with Gp-point
quadrature.  The one-step Taylor scheme buys its single sweep with the
densest per-cell work; the two-stage scheme is the cheapest per step.
"""

from diracdg.cost import cost_table, predicted_ops


def main():
    for q in (2, 3):
        print(cost_table(q, j=1000))
        print()

    # the ranking is not about one grid size: the counts are affine in J,
    # so check a spread
    for j in (10, 100, 10_000):
        totals = {s: predicted_ops(s, 2, j)["total"]
                  for s in ("lwdg", "tsdg", "rkdg")}
        ranked = sorted(totals, key=totals.get, reverse=True)
        print(f"J = {j:>6}: " + " > ".join(ranked))


if __name__ == "__main__":
    main()
