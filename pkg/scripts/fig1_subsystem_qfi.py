"""Subsystem QFIs against the qubit angle for n=3, omega in {1.0, 1.5}.

Writes one CSV per omega into the output directory.
"""
import argparse
from pathlib import Path

from jcmetrology import cli


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--outdir", default="results")
    parser.add_argument("--points", type=int, default=181)
    args = parser.parse_args()
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for omega in (1.0, 1.5):
        path = outdir / f"fig1_qfi_n3_omega{omega}.csv"
        cli.main(["qfi", "--sweep", "theta", "--n", "3", "--omega", str(omega),
                  "--points", str(args.points), "--out", str(path)])
        print(path)


if __name__ == "__main__":
    main()
