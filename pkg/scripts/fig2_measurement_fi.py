"""QFIs and population/Fock-measurement FIs against theta at n=3, omega=1.25."""
import argparse
from pathlib import Path

from jcmetrology import cli


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/fig2_fi_n3_omega1.25.csv")
    parser.add_argument("--points", type=int, default=181)
    args = parser.parse_args()
    Path(args.out).parent.mkdir(parents=True, exist_ok=True)
    cli.main(["fi", "--sweep", "theta", "--n", "3", "--omega", "1.25",
              "--points", str(args.points), "--out", args.out])
    print(args.out)


if __name__ == "__main__":
    main()
