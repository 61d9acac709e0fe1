"""Command line front end.

Subcommands: design, validate, oracle, bler, sweep, select.  All output
artifacts go to --out (default stdout); logs go to stderr, gated by the
HDCODE_LOG environment variable.  Exit codes: 0 on success, 1 on domain
failures (invalid codebook, failed search, no feasible selection), 2 on
usage errors.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import os
import sys
from pathlib import Path
from typing import Sequence

from .codebook import (
    Codebook,
    CodebookFormatError,
    load_codebook,
    min_distance,
    serialize_codebook,
    total_ones,
)
from .metrics import (
    BLER_MODES,
    DEFAULT_TRIALS,
    MODE_THEORY_DOMINANT,
    RULE_MAX_BLER,
    RULE_MIN_ENERGY,
    RULE_MIN_THROUGHPUT,
    BlerRow,
    BlerTable,
    SelectionRule,
    bler_table,
    select_codebook,
    tradeoff_sweep,
)
from .oracle import ORACLE_MAX_K, ORACLE_MAX_N, exhaustive_best_codebook
from .search import DesignConfig, genetic_local_search

logger = logging.getLogger("hdcode.cli")


class CliUsageError(Exception):
    """Bad argument values detected after argparse; exits with code 2."""


def _configure_logging() -> None:
    level_name = os.environ.get("HDCODE_LOG", "").strip().upper()
    if not level_name:
        return
    level = getattr(logging, level_name, None)
    if not isinstance(level, int):
        logging.basicConfig(level=logging.INFO, stream=sys.stderr)
        logging.getLogger("hdcode").warning("unknown HDCODE_LOG level %r, using INFO", level_name)
        return
    logging.basicConfig(level=level, stream=sys.stderr)


def parse_snr_grid(text: str) -> list[float]:
    """Parse '0,1,2.5' or 'start:stop[:step]' (inclusive) into a sorted grid."""
    text = text.strip()
    try:
        if ":" in text:
            parts = text.split(":")
            if len(parts) == 2:
                start, stop = float(parts[0]), float(parts[1])
                step = 1.0
            elif len(parts) == 3:
                start, stop = float(parts[0]), float(parts[1])
                step = float(parts[2])
            else:
                raise ValueError
            if step <= 0 or stop < start:
                raise ValueError
            count = int((stop - start) / step + 1e-9) + 1
            return [start + i * step for i in range(count)]
        grid = [float(p) for p in text.split(",") if p.strip()]
        if not grid:
            raise ValueError
        return sorted(grid)
    except ValueError:
        raise CliUsageError(
            f"cannot parse SNR grid {text!r}; use '0,1,2' or 'start:stop[:step]'"
        ) from None


def parse_rule(text: str) -> SelectionRule:
    """Parse 'qt>=X', 'throughput>=X', or 'bler<=X' into a SelectionRule."""
    compact = text.replace(" ", "")
    for prefix, kind in (
        ("qt>=", RULE_MIN_ENERGY),
        ("throughput>=", RULE_MIN_THROUGHPUT),
        ("bler<=", RULE_MAX_BLER),
    ):
        if compact.startswith(prefix):
            try:
                threshold = float(compact[len(prefix):])
            except ValueError:
                break
            return SelectionRule(kind=kind, threshold=threshold)
    raise CliUsageError(
        f"cannot parse rule {text!r}; use 'qt>=X', 'throughput>=X', or 'bler<=X'"
    )


def _write_text(out: str | None, text: str) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


def _load_books(paths: Sequence[str]) -> tuple[list[Codebook], list[str]]:
    books = [load_codebook(p) for p in paths]
    stems = [Path(p).stem for p in paths]
    ids = []
    for i, stem in enumerate(stems):
        ids.append(stem if stems.count(stem) == 1 else f"{stem}#{i}")
    return books, ids


def _csv_text(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([repr(v) if isinstance(v, float) else v for v in row])
    return buf.getvalue()


def _read_bler_table(path: Path, codebook_id: str) -> BlerTable:
    """Load a CSV written by the bler subcommand back into a BlerTable."""
    needed = ("snr_db", "mode", "bler", "ci95", "trials")
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames is None or not set(needed) <= set(reader.fieldnames):
            raise ValueError(f"{path}: expected columns {','.join(needed)}")
        rows: list[BlerRow] = []
        modes: set[str] = set()
        for line in reader:
            modes.add(line["mode"])
            rows.append(
                BlerRow(
                    snr_db=float(line["snr_db"]),
                    bler=float(line["bler"]),
                    ci95=float(line["ci95"]) if line["ci95"] else None,
                    trials=int(line["trials"]) if line["trials"] else None,
                )
            )
    if not rows:
        raise ValueError(f"{path}: table has no rows")
    if len(modes) != 1:
        raise ValueError(f"{path}: rows mix modes {sorted(modes)}")
    rows.sort(key=lambda r: r.snr_db)
    return BlerTable(codebook_id=codebook_id, mode=modes.pop(), rows=tuple(rows))


def _load_library(directory: str) -> list[tuple[Codebook, BlerTable]]:
    """Read codebook JSON + BLER table CSV pairs (matched by stem) from a directory."""
    root = Path(directory)
    if not root.is_dir():
        raise CliUsageError(f"--library {directory!r} is not a directory")
    pairs = []
    for book_path in sorted(root.glob("*.json")):
        table_path = book_path.with_suffix(".csv")
        if not table_path.exists():
            raise ValueError(f"missing BLER table {table_path.name} next to {book_path.name}")
        book = load_codebook(book_path)
        pairs.append((book, _read_bler_table(table_path, book_path.stem)))
    if not pairs:
        raise ValueError(f"no codebook JSON files found in {directory!r}")
    return pairs


def _cmd_design(args: argparse.Namespace) -> int:
    config = DesignConfig(
        population_size=args.population_size,
        init_size_range=tuple(args.init_size),
        mutation_rate=args.mutation_rate,
        patience=args.patience,
        max_generations=args.max_generations,
        seed=args.seed,
        literal_weight=args.literal_weight,
    )
    report = genetic_local_search(args.n, args.k, args.d, config)
    if args.report is not None:
        doc = {
            "succeeded": report.succeeded,
            "best": json.loads(serialize_codebook(report.best)) if report.best else None,
            "best_ones": report.best_ones,
            "generations_run": report.generations_run,
            "weight_history": list(report.weight_history),
        }
        Path(args.report).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")
    if not report.succeeded:
        print(
            f"design failed: no complete (n={args.n}, k={args.k}, d={args.d}) codebook "
            f"found in {report.generations_run} generations",
            file=sys.stderr,
        )
        return 1
    logger.info(
        "design done: total ones %d after %d generations", report.best_ones, report.generations_run
    )
    _write_text(args.out, serialize_codebook(report.best))
    return 0


def _cmd_validate(args: argparse.Namespace) -> int:
    try:
        book = load_codebook(args.codebook)
    except CodebookFormatError as exc:
        print(f"invalid: {exc}", file=sys.stderr)
        return 1
    summary = (
        f"valid: n={book.n} k={book.k} d={book.d} codewords={book.m} "
        f"min_distance={min_distance(book) if book.m >= 2 else 'n/a'} "
        f"total_ones={total_ones(book)}\n"
    )
    _write_text(args.out, summary)
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    if args.n > ORACLE_MAX_N or args.k > ORACLE_MAX_K:
        raise CliUsageError(
            f"oracle is capped at n <= {ORACLE_MAX_N} and k <= {ORACLE_MAX_K}"
        )
    result = exhaustive_best_codebook(args.n, args.k, args.d)
    payload = {
        "feasible": result.feasible,
        "optimum_ones": result.optimum_ones,
        "codebook": None,
    }
    if result.witness is not None:
        payload["codebook"] = {
            "n": result.witness.n,
            "k": result.witness.k,
            "d": result.witness.d,
            "codewords": list(result.witness.bitstrings()),
        }
    _write_text(args.out, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0


def _cmd_bler(args: argparse.Namespace) -> int:
    grid = parse_snr_grid(args.snr_db)
    book = load_codebook(args.codebook)
    table = bler_table(
        book,
        grid,
        mode=args.mode,
        trials=args.trials,
        seed=args.seed,
        threads=args.threads,
        codebook_id=Path(args.codebook).stem,
    )
    rows = [(r.snr_db, table.mode, r.bler, r.ci95, r.trials) for r in table.rows]
    _write_text(args.out, _csv_text(("snr_db", "mode", "bler", "ci95", "trials"), rows))
    return 0


def _cmd_sweep(args: argparse.Namespace) -> int:
    grid = parse_snr_grid(args.snr_db)
    books, ids = _load_books(args.codebook)
    records = tradeoff_sweep(
        books,
        grid,
        mode=args.mode,
        trials=args.trials,
        seed=args.seed,
        threads=args.threads,
        ids=ids,
        literal_total=args.literal_total,
    )
    rows = [
        (
            rec.codebook_id, rec.n, rec.k, rec.d, rec.snr_db,
            rec.bler, rec.throughput, rec.energy_per_bit, rec.energy_per_time,
        )
        for rec in records
    ]
    header = (
        "codebook_id", "n", "k", "d", "snr_db",
        "bler", "throughput", "energy_per_bit", "energy_per_time",
    )
    _write_text(args.out, _csv_text(header, rows))
    return 0


def _cmd_select(args: argparse.Namespace) -> int:
    rule = parse_rule(args.rule)
    library = _load_library(args.library)
    for _, table in library:
        lo, hi = table.snr_range
        if not lo <= args.snr_db <= hi:
            raise CliUsageError(
                f"--snr-db {args.snr_db} lies outside the range [{lo}, {hi}] "
                f"tabulated for {table.codebook_id!r}"
            )
    decision = select_codebook(library, args.snr_db, rule, literal_total=args.literal_total)
    if decision is None:
        print(f"no codebook satisfies {args.rule!r} at {args.snr_db} dB", file=sys.stderr)
        return 1
    payload = {
        "codebook_id": decision.codebook_id,
        "snr_db": decision.snr_db,
        "bler": decision.bler,
        "throughput": decision.throughput,
        "energy_per_bit": decision.energy_per_bit,
        "energy_per_time": decision.energy_per_time,
        "codebook": {
            "n": decision.codebook.n,
            "k": decision.codebook.k,
            "d": decision.codebook.d,
            "codewords": list(decision.codebook.bitstrings()),
        },
    }
    _write_text(args.out, json.dumps(payload, sort_keys=True, indent=2) + "\n")
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--seed", type=int, default=0, help="base RNG seed (default 0)")
    sub.add_argument("--out", default=None, help="output path (default stdout)")
    sub.add_argument("--threads", type=int, default=1, help="worker threads (default 1)")


def _add_eval_options(sub: argparse.ArgumentParser) -> None:
    sub.add_argument(
        "--mode", choices=BLER_MODES, default=MODE_THEORY_DOMINANT,
        help="BLER evaluation mode (default theory-dominant)",
    )
    sub.add_argument(
        "--trials", type=int, default=DEFAULT_TRIALS,
        help=f"Monte Carlo trials per point in sim mode (default {DEFAULT_TRIALS})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hdcode",
        description="Design and evaluate high-density codebooks for OOK links.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("design", help="search for a high-density (n, k, d) codebook")
    p.add_argument("-n", "--n", type=int, required=True, help="codeword length")
    p.add_argument("-k", "--k", type=int, required=True, help="message bits; codebook size is 2**k")
    p.add_argument("-d", "--d", type=int, required=True, help="minimum Hamming distance")
    p.add_argument("--report", default=None, metavar="PATH",
                   help="also write a search report JSON (codebook, ones total, weight history)")
    p.add_argument("--population-size", type=int, default=10)
    p.add_argument("--init-size", type=int, nargs=2, default=[1, 5], metavar=("LO", "HI"),
                   help="initial codebook size range (default 1 5)")
    p.add_argument("--mutation-rate", type=float, default=0.5)
    p.add_argument("--patience", type=int, default=20,
                   help="stop after this many generations without progress")
    p.add_argument("--max-generations", type=int, default=500)
    p.add_argument("--literal-weight", action="store_true",
                   help="rank complete codebooks by raw ones total instead of their best 2**k subset")
    _add_common(p)
    p.set_defaults(handler=_cmd_design)

    p = subs.add_parser("validate", help="check a codebook file against its declared (n, k, d)")
    p.add_argument("codebook", help="path to a codebook JSON file")
    _add_common(p)
    p.set_defaults(handler=_cmd_validate)

    p = subs.add_parser("oracle", help="exact optimum for small (n, k, d) by exhaustive search")
    p.add_argument("-n", "--n", type=int, required=True)
    p.add_argument("-k", "--k", type=int, required=True)
    p.add_argument("-d", "--d", type=int, required=True)
    _add_common(p)
    p.set_defaults(handler=_cmd_oracle)

    p = subs.add_parser("bler", help="evaluate BLER of one codebook over an SNR grid")
    p.add_argument("--codebook", required=True, help="path to a codebook JSON file")
    p.add_argument("--snr-db", required=True,
                   help="SNR grid in dB: '0,1,2' or 'start:stop[:step]'")
    _add_eval_options(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_bler)

    p = subs.add_parser("sweep", help="throughput/energy trade-off table for several codebooks")
    p.add_argument("--codebook", action="append", required=True,
                   help="codebook JSON path; repeat for several")
    p.add_argument("--snr-db", default="0:8:0.5",
                   help="SNR grid in dB: '0,1,2' or 'start:stop[:step]' (default '0:8:0.5')")
    p.add_argument("--literal-total", action="store_true",
                   help="use the raw ones total in energy figures instead of the per-codeword average")
    _add_eval_options(p)
    _add_common(p)
    p.set_defaults(handler=_cmd_sweep)

    p = subs.add_parser("select", help="pick the best codebook for an operating point")
    p.add_argument("--library", required=True,
                   help="directory of codebook JSON files, each with a BLER table CSV of the same stem")
    p.add_argument("--snr-db", type=float, required=True, help="operating SNR in dB")
    p.add_argument("--rule", required=True,
                   help="'qt>=X' (energy floor), 'throughput>=X', or 'bler<=X'")
    p.add_argument("--literal-total", action="store_true",
                   help="use the raw ones total in energy figures instead of the per-codeword average")
    _add_common(p)
    p.set_defaults(handler=_cmd_select)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging()
    try:
        return args.handler(args)
    except CliUsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (CodebookFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
