"""Tabulate the dimension of the Stoll-form solution space over n and k."""
import argparse
import csv
import sys
from dataclasses import dataclass

from dickson_legendre import dickson as dk
from dickson_legendre import ode


@dataclass(frozen=True)
class StollSweepConfig:
    n_min: int = 2
    n_max: int = 16
    k_values: tuple[int, ...] = (0, 1, 2, 3)


def sweep(cfg: StollSweepConfig):
    for k in cfg.k_values:
        for n in range(cfg.n_min, cfg.n_max + 1):
            basis = ode.fit_stoll(n, k)
            f = dk.kth_kind(n, k)
            verified = all(ode.stoll_residual(v, f).is_zero() for v in basis.basis)
            yield {"n": n, "k": k, "dimension": basis.dimension, "verified": verified}


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n-min", type=int, default=2)
    parser.add_argument("--n-max", type=int, default=16)
    parser.add_argument("--k", type=int, nargs="+", default=[0, 1, 2, 3])
    args = parser.parse_args(argv)
    cfg = StollSweepConfig(args.n_min, args.n_max, tuple(args.k))

    writer = csv.DictWriter(sys.stdout, fieldnames=["n", "k", "dimension", "verified"])
    writer.writeheader()
    for row in sweep(cfg):
        writer.writerow(row)


if __name__ == "__main__":
    main()
