"""Observed RK4 convergence order for the built-in models.

Compares fixed-step RK4 against the exact exponential propagator over
t in [0, 1] for a ladder of step sizes and prints the order between
successive halvings.
"""

import argparse
import math

import numpy as np

from nhbrackets.dynamics import EvolutionSpec, propagate
from nhbrackets.models import builtin_model
from nhbrackets.operators import fro

MODELS = {
    "pt_dimer(0.5, 1)": ("pt_dimer", [0.5, 1]),
    "pt_dimer(1, 1)": ("pt_dimer", [1, 1]),
    "chain(4, 1, 0.3)": ("chain", [4, 1, 0.3]),
    "decay(0.2, 2)": ("decay", [0.2, 2]),
}


def max_error(h, x0, picture, dt):
    kw = dict(picture=picture, dt=dt, t_final=1.0)
    rk = propagate(EvolutionSpec(h, integrator="rk4", **kw), x0)
    ex = propagate(EvolutionSpec(h, **kw), x0)
    return max(fro(a - b) for a, b in zip(rk, ex))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--picture", default="heisenberg-observable",
                    choices=["heisenberg-observable", "schrodinger-density"])
    args = ap.parse_args()
    steps = [0.04, 0.02, 0.01, 0.005]
    for label, (name, params) in MODELS.items():
        h = builtin_model(name, params)
        n = h.shape[0]
        x0 = np.eye(n, k=1) + np.diag(np.arange(n, dtype=float))
        errs = [max_error(h, x0, args.picture, dt) for dt in steps]
        orders = [math.log2(a / b) if b > 0 else float("nan") for a, b in zip(errs, errs[1:])]
        print(f"{label:18s} errors " + " ".join(f"{e:.2e}" for e in errs)
              + "  orders " + " ".join(f"{o:.2f}" for o in orders))


if __name__ == "__main__":
    main()
