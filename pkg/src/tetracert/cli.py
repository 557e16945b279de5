"""Command-line front end: ``verify <target> [--seed S] [--format text|json] [--out PATH]``.

Exit status is 0 when every requested certificate passes, 1 when any fails
and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .certificates import CERTIFICATES, DEFAULT_SEED, SEEDS, Certificate, report_json, run_all

TARGETS = ("all",) + tuple(CERTIFICATES)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="verify",
        description="Exact re-derivation of the stabilizer, decomposition and freeness certificates.",
    )
    parser.add_argument("target", choices=TARGETS, help="certificate to run, or 'all'")
    parser.add_argument("--seed", default=DEFAULT_SEED, choices=sorted(SEEDS), help="generic point sequence")
    parser.add_argument("--format", default="text", choices=("text", "json"), dest="fmt")
    parser.add_argument("--out", default=None, help="write the report here instead of stdout")
    parser.add_argument("--timings", action="store_true", help="include elapsed_ms in JSON (breaks byte-identity)")
    return parser


def format_text(certs: Sequence[Certificate], seed: str) -> str:
    lines = [f"seed: {seed}"]
    for c in certs:
        lines.append(f"{c.status.upper():4}  {c.id:<15} {c.paper_anchor}  ({c.elapsed_ms} ms)")
        if c.id == "decompositions":
            for name, mult in c.witnesses.get("multiplicities", {}).items():
                lines.append(f"        {name:<16} {tuple(mult)}")
        failure = c.first_failure()
        if failure is not None:
            detail = {k: v for k, v in failure.items() if k not in ("name", "ok")}
            lines.append(f"        first failure: {failure['name']}")
            if detail:
                lines.append(f"        witnesses: {json.dumps(detail, ensure_ascii=False)}")
    passed = sum(c.passed for c in certs)
    lines.append(f"{passed}/{len(certs)} certificates passed")
    return "\n".join(lines) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    names = None if args.target == "all" else [args.target]
    certs = run_all(seed=args.seed, names=names)
    if args.fmt == "json":
        text = report_json(certs, args.seed, timings=args.timings)
    else:
        text = format_text(certs, args.seed)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if all(c.passed for c in certs) else 1


if __name__ == "__main__":
    sys.exit(main())
