#!/usr/bin/env python3
"""Tabulate BLER curves for every codebook JSON in a directory.

For each codebook and each requested mode this shells into the package CLI,
so the CSVs are byte-identical to what `hdcode bler` would produce by hand.
Theory curves are instant; add `--modes sim` (with --trials) for Monte Carlo.
"""

from __future__ import annotations

import argparse
import logging
from pathlib import Path

from hdcode.cli import main as hdcode_main
from hdcode.metrics import BLER_MODES

log = logging.getLogger("bler_curves")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--books", default="results/codebooks",
                        help="directory of codebook JSON files")
    parser.add_argument("--out-dir", default="results/bler")
    parser.add_argument("--snr-db", default="0:8:0.5",
                        help="grid as '0,1,2' or 'start:stop[:step]' (default 0:8:0.5)")
    parser.add_argument("--modes", nargs="+", default=["theory-dominant", "theory-union"],
                        choices=BLER_MODES)
    parser.add_argument("--trials", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=4)
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO, format="%(message)s")
    books = sorted(Path(args.books).glob("*.json"))
    if not books:
        log.error("no codebook JSON files in %s", args.books)
        return 1
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    for book in books:
        for mode in args.modes:
            out = out_dir / f"{book.stem}.{mode}.csv"
            code = hdcode_main([
                "bler", "--codebook", str(book), "--snr-db", args.snr_db,
                "--mode", mode, "--trials", str(args.trials),
                "--seed", str(args.seed), "--threads", str(args.threads),
                "--out", str(out),
            ])
            if code != 0:
                return code
            log.info("wrote %s", out)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
