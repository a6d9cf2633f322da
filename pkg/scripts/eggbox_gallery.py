"""Write egg-box DOT files for a handful of small instances.

Render with e.g. ``dot -Tsvg out/eggbox_2-2.dot -o eggbox_2-2.svg``.
"""

import argparse
import pathlib
import sys

from estar.core import Partition
from estar.eggbox import eggbox_dot
from estar.engine import enumerate_semigroup

DEFAULT_SHAPES = ["3", "2,1", "2,2", "1,1,1", "3,1"]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("shapes", nargs="*", default=DEFAULT_SHAPES, help="block sizes, e.g. 2,2")
    ap.add_argument("--kind", default="regT")
    ap.add_argument("--out-dir", default="eggboxes")
    args = ap.parse_args(argv)

    out = pathlib.Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for shape in args.shapes:
        E = Partition.from_sizes([int(v) for v in shape.split(",")])
        S = enumerate_semigroup(args.kind, E)
        path = out / f"eggbox_{shape.replace(',', '-')}.dot"
        path.write_text(eggbox_dot(S, title=f"{args.kind} blocks {shape}"))
        print(f"{path}  ({len(S)} elements)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
