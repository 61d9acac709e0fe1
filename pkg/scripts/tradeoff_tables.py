#!/usr/bin/env python3
"""Build the throughput/energy trade-off table and a selection library.

Three artifacts from one directory of designed codebooks:

  results/tradeoff.csv      sweep of every codebook over the SNR grid
  results/library/          codebook JSON + BLER table CSV pairs for `select`
  stdout                    example selections at a few operating points
"""

from __future__ import annotations

import argparse
import shutil
from pathlib import Path

from hdcode.cli import main as hdcode_main

EXAMPLE_RULES = [
    (2.0, "bler<=1e-2"),
    (5.0, "qt>=0.6"),
    (8.0, "throughput>=0.3"),
]


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--books", default="results/codebooks",
                        help="directory of codebook JSON files")
    parser.add_argument("--out-dir", default="results")
    parser.add_argument("--snr-db", default="0:8:0.5")
    parser.add_argument("--mode", default="theory-dominant")
    parser.add_argument("--trials", type=int, default=100_000)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--threads", type=int, default=4)
    args = parser.parse_args(argv)

    books = sorted(Path(args.books).glob("*.json"))
    if not books:
        print(f"no codebook JSON files in {args.books}")
        return 1
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    sweep_args = ["sweep", "--snr-db", args.snr_db, "--mode", args.mode,
                  "--trials", str(args.trials), "--seed", str(args.seed),
                  "--threads", str(args.threads),
                  "--out", str(out_dir / "tradeoff.csv")]
    for book in books:
        sweep_args += ["--codebook", str(book)]
    code = hdcode_main(sweep_args)
    if code != 0:
        return code
    print(f"wrote {out_dir / 'tradeoff.csv'}")

    library = out_dir / "library"
    library.mkdir(exist_ok=True)
    for book in books:
        shutil.copy(book, library / book.name)
        code = hdcode_main([
            "bler", "--codebook", str(book), "--snr-db", args.snr_db,
            "--mode", args.mode, "--trials", str(args.trials),
            "--seed", str(args.seed), "--threads", str(args.threads),
            "--out", str(library / f"{book.stem}.csv"),
        ])
        if code != 0:
            return code
    print(f"wrote selection library {library}")

    for snr, rule in EXAMPLE_RULES:
        print(f"\nselect --snr-db {snr} --rule '{rule}':")
        hdcode_main(["select", "--library", str(library),
                     "--snr-db", str(snr), "--rule", rule])
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
