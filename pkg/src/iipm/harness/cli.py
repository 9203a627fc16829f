"""Command line entry point.

    iipm score --input preds.csv --output out/ [--measures mmi,mmi-lin,gh,ediff]
               [--grid-max 0.9 --grid-step 0.05] [--exact-k-guard 20] [--seed 0]
    iipm synth --n 2000 --k 5 --m 10 --profile mixed --seed 0 --output preds.csv

Exit codes: 0 success, 1 validation error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import logging
import sys

from ..errors import IIPMError
from .data import load_predictions, write_predictions
from .pipeline import DEFAULT_MEASURES, RunConfig, run_score
from .synth import PROFILES, synth_generate

log = logging.getLogger("iipm")

EXIT_OK, EXIT_VALIDATION, EXIT_IO = 0, 1, 2


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="iipm", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    score = sub.add_parser("score", help="score an ensemble prediction table")
    score.add_argument("--input", required=True)
    score.add_argument("--output", required=True, help="directory for report.json and ar_curves.csv")
    score.add_argument("--measures", default=",".join(DEFAULT_MEASURES))
    score.add_argument("--grid-max", type=float, default=0.9)
    score.add_argument("--grid-step", type=float, default=0.05)
    score.add_argument("--exact-k-guard", type=int, default=20)
    score.add_argument("--seed", type=int, default=0)
    score.add_argument("--workers", type=int, default=1)

    synth = sub.add_parser("synth", help="write a seeded synthetic prediction table")
    synth.add_argument("--n", type=int, required=True)
    synth.add_argument("--k", type=int, required=True)
    synth.add_argument("--m", type=int, required=True)
    synth.add_argument("--profile", default="mixed", choices=sorted(PROFILES))
    synth.add_argument("--seed", type=int, default=0)
    synth.add_argument("--output", required=True)
    return parser


def _score(args) -> None:
    config = RunConfig(
        measures=tuple(m.strip() for m in args.measures.split(",") if m.strip()),
        grid_max=args.grid_max,
        grid_step=args.grid_step,
        exact_k_guard=args.exact_k_guard,
        seed=args.seed,
        input_path=args.input,
        output_dir=args.output,
        workers=args.workers,
    )
    table = load_predictions(args.input)
    result = run_score(table, config)
    for name in result.skipped:
        log.warning("%s skipped: K=%d exceeds the exact guard %d", name, table.K, config.exact_k_guard)
    for name, curve in result.curves.items():
        if curve is not None:
            log.info("%-8s AUC %.4f", name, curve.auc)
    log.info("wrote %s and %s", *result.paths)


def _synth(args) -> None:
    table = synth_generate(args.seed, args.n, args.k, args.m, args.profile)
    write_predictions(table, args.output)
    log.info("wrote %d instances to %s", table.n, args.output)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    try:
        {"score": _score, "synth": _synth}[args.command](args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (IIPMError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
