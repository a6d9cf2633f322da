"""Tabulate reg(T) per block shape: size, Green's class counts, ideals, kernel.

    python scripts/census.py --n-max 6 [--csv census.csv]
"""

import argparse
import csv
import sys
from math import factorial, prod

from estar.core import CapacityError, Partition, integer_partitions
from estar.engine import enumerate_semigroup, greens_oracle, t_estar_size
from estar.ideals import enumerate_ideals, is_principal

COLUMNS = ["shape", "size", "L", "R", "H", "D", "ideals", "principal", "kernel"]


def census_row(sizes, max_size):
    E = Partition.from_sizes(sizes)
    row = {"shape": ",".join(map(str, sizes)), "size": t_estar_size(E),
           "kernel": factorial(len(sizes)) * prod(sizes)}
    if row["size"] > max_size:
        return row
    S = enumerate_semigroup("regT", E)
    for rel in "LRHD":
        row[rel] = len(greens_oracle(S, rel).classes)
    try:
        found = enumerate_ideals(E)
        row["ideals"] = len(found)
        row["principal"] = sum(is_principal(I.elements, E)[0] for I in found)
    except CapacityError:
        pass
    return row


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--n-max", type=int, default=5)
    ap.add_argument("--max-size", type=int, default=2000, help="skip class counts above this |reg(T)|")
    ap.add_argument("--csv")
    args = ap.parse_args(argv)

    rows = [census_row(p, args.max_size) for n in range(1, args.n_max + 1) for p in integer_partitions(n)]
    print("  ".join(f"{c:>9}" for c in COLUMNS))
    for r in rows:
        print("  ".join(f"{str(r.get(c, '-')):>9}" for c in COLUMNS))
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, COLUMNS)
            w.writeheader()
            w.writerows(rows)
    return 0


if __name__ == "__main__":
    sys.exit(main())
