"""Sweep the PT dimer gain/loss rate through the exceptional point.

For each gamma (v fixed) report the spectrum, the density-matrix trace at
t_final and the Heisenberg/Schrodinger picture gap for rho0 = |0><0|,
chi0 = sigma_z.  Writes a CSV table.

    python scripts/pt_dimer_scan.py --v 1 --t 1 --out pt_scan.csv
"""

import argparse
import csv

import numpy as np

from nhbrackets.dynamics import compare_pictures, density_propagate
from nhbrackets.models import pt_dimer
from nhbrackets.operators import SIGMA_Z


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--v", type=float, default=1.0)
    ap.add_argument("--t", type=float, default=1.0)
    ap.add_argument("--gammas", type=float, nargs=3, default=[0.0, 2.0, 41],
                    metavar=("START", "STOP", "NUM"))
    ap.add_argument("--out", default="pt_scan.csv")
    args = ap.parse_args()

    rho0 = np.diag([1.0, 0.0]).astype(complex)
    start, stop, num = args.gammas
    rows = []
    for g in np.linspace(start, stop, int(num)):
        h = pt_dimer(g, args.v)
        lam = max(np.linalg.eigvals(h), key=lambda z: (round(z.real, 12), round(z.imag, 12)))
        tr = np.trace(density_propagate(h, rho0, args.t)).real
        gap = compare_pictures(h, rho0, SIGMA_Z, 1.0, args.t).gap
        phase = "unbroken" if g < abs(args.v) else ("exceptional" if g == abs(args.v) else "broken")
        rows.append([g, lam.real, lam.imag, tr, gap, phase])
        print(f"gamma={g:6.3f}  lambda+={lam:.4f}  Tr rho={tr:10.4f}  gap={gap:.4e}  {phase}")

    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["gamma", "lambda_re", "lambda_im", "trace", "picture_gap", "phase"])
        w.writerows(rows)
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
