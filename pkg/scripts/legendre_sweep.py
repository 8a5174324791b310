"""Sweep the finite-difference ODE residuals of P, Q and the homogeneous solution.

Writes CSV rows (n, z, which, residual) for plotting or inspection.
"""
import argparse
import cmath
import csv
import math
import random
import sys
from dataclasses import dataclass

import numpy as np

from dickson_legendre import specfn


@dataclass(frozen=True)
class LegendreSweepConfig:
    ns: tuple[int, ...] = (1, 2, 3, 5)
    z_min: float = 1.05
    z_max: float = 2.9
    points: int = 25
    a: float = 1.0
    seed: int = 0


def sweep(cfg: LegendreSweepConfig):
    rng = random.Random(cfg.seed)
    for n in cfg.ns:
        params = specfn.LegendreParams(n)
        for z in np.linspace(cfg.z_min, cfg.z_max, cfg.points):
            z = float(z)
            for which in ("P", "Q"):
                yield n, z, which, specfn.assoc_legendre_ode_residual(params, z, which)
            A = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
            B = cmath.exp(1j * rng.uniform(0, 2 * math.pi))
            x = 2 * math.sqrt(cfg.a) * z
            yield n, z, "fc", specfn.homogeneous_ode_residual(n, cfg.a, x, A, B)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, nargs="+", default=[1, 2, 3, 5])
    parser.add_argument("--points", type=int, default=25)
    parser.add_argument("--a", type=float, default=1.0)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    cfg = LegendreSweepConfig(ns=tuple(args.n), points=args.points, a=args.a, seed=args.seed)

    writer = csv.writer(sys.stdout)
    writer.writerow(["n", "z", "which", "residual"])
    worst = 0.0
    for n, z, which, res in sweep(cfg):
        writer.writerow([n, f"{z:.6f}", which, f"{res:.3e}"])
        worst = max(worst, res)
    print(f"max residual {worst:.3e}", file=sys.stderr)


if __name__ == "__main__":
    main()
