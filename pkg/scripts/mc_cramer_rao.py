"""Estimator variance versus the Cramer-Rao bound for growing sample sizes.

Prints one CSV row per (measurement, M) with Var*M*F and the efficiency.
"""
import argparse
import csv
import sys

from jcmetrology import inference
from jcmetrology.jc_model import ProbeSpec


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--theta", type=float, default=0.0)
    parser.add_argument("--n", type=int, default=3)
    parser.add_argument("--omega-true", type=float, default=1.25)
    parser.add_argument("--reps", type=int, default=200)
    parser.add_argument("--seed", type=int, default=42)
    args = parser.parse_args()

    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["measurement", "samples", "var_M_F", "var_M_H", "efficiency", "bias"])
    for measurement in ("joint", "qubit", "field"):
        for m in (100, 1_000, 10_000, 100_000):
            cfg = inference.McConfig(ProbeSpec(args.theta, args.n), args.omega_true,
                                     measurement, m, args.reps, args.seed)
            try:
                rep = inference.run_experiment(cfg)
            except inference.EstimationError as exc:
                print(f"# {measurement}: {exc}", file=sys.stderr)
                break
            v = rep.empirical_variance * m
            writer.writerow([measurement, m, f"{v * rep.fisher:.4f}", f"{v * rep.qfi:.4f}",
                             f"{rep.efficiency:.4f}", f"{rep.bias:.3e}"])


if __name__ == "__main__":
    main()
