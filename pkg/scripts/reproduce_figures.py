#!/usr/bin/env python3
"""Regenerate every built-in figure data set into a directory.

    python scripts/reproduce_figures.py out/ --format csv

Plotting is left to whatever tool reads the CSV/JSON.
"""

import argparse
import sys
import time
from pathlib import Path

from xpm_cavity.figures import FIGURES
from xpm_cavity.tables import FORMATS, write_table


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.split("\n")[1])
    p.add_argument("outdir", type=Path)
    p.add_argument("--format", choices=FORMATS, default="csv")
    p.add_argument("--only", nargs="+", choices=sorted(FIGURES))
    args = p.parse_args(argv)

    for name in args.only or FIGURES:
        t0 = time.perf_counter()
        for key, table in FIGURES[name]().items():
            path = write_table(table, args.outdir / f"{key}.{args.format}", args.format)
            print(f"{path}  ({len(table.records)} rows, {time.perf_counter() - t0:.2f}s)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
