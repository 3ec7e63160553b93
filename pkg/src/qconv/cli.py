"""Command-line front end: identity verification, sequence tables, spec expansion.

Exit status contract: 0 when every requested check passes, 1 when any identity
check fails, 2 on usage errors or malformed spec files.  Structured output is
one JSON object per line with sorted keys, so a fixed seed and configuration
produce byte-identical output across runs.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
from dataclasses import dataclass

from . import identities
from .engine import SpecError, expand_product, load_spec
from .identities import IDENTITY_IDS, IdentityCase, recommended_qorder
from .qtools import gaussian_binomial, partition_p, rogers_szego

_RANGE_RE = re.compile(r"^(\d+)\.\.(\d+)$|^(\d+)$")


def parse_range(text: str) -> tuple[int, int]:
    """Inclusive 'lo..hi' (or a single 'n')."""
    m = _RANGE_RE.match(text)
    if not m:
        raise ValueError(f"expected lo..hi or a single integer, got {text!r}")
    if m.group(3) is not None:
        lo = hi = int(m.group(3))
    else:
        lo, hi = int(m.group(1)), int(m.group(2))
    if lo > hi:
        raise ValueError(f"empty range {text!r}")
    return lo, hi


def default_qorder(n_max: int) -> int:
    return max(40, recommended_qorder(n_max))


@dataclass
class RunConfig:
    command: str
    identity_id: str | None = None
    n_range: tuple[int, int] = (1, 1)
    qorder: int = 40
    torder: int = 0
    spec_path: str | None = None
    output_format: str = "text"
    seed: int = 0
    spot_checks: int = 20
    sequence_kind: str | None = None
    gaussian_m: int | None = None


def _case_rng(seed: int, identity_id: str, n: int) -> random.Random:
    """Per-case generator so batch order cannot influence spot-check draws."""
    return random.Random(f"{seed}:{identity_id}:{n}")


def _run_case(
    identity_id: str,
    n: int,
    qorder: int,
    seed: int,
    spot_checks: int,
    lambdas=None,
) -> IdentityCase:
    if identity_id == "T1a":
        return identities.verify_t1a(n, qorder)
    if identity_id == "T1b":
        return identities.verify_t1b(n, qorder)
    if identity_id == "T2":
        return identities.verify_t2(n, qorder)
    if identity_id == "T3":
        return identities.verify_t3(
            n, qorder, spot_checks=spot_checks, rng=_case_rng(seed, "T3", n)
        )
    if identity_id == "T4":
        return identities.verify_t4(
            n, qorder, spot_checks=spot_checks, rng=_case_rng(seed, "T4", n)
        )
    if identity_id == "T5":
        return identities.verify_t5(n, qorder, lambdas=lambdas)
    raise ValueError(f"unknown identity id {identity_id!r}")


def _emit(record: dict, fmt: str, text: str) -> None:
    if fmt == "structured":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


def _verify_ids(config: RunConfig, ids: list[str]) -> int:
    lo, hi = config.n_range
    cases: list[IdentityCase] = []
    lambdas = identities.lambda_sequence(hi, config.qorder) if "T5" in ids else None
    for identity_id in ids:
        for n in range(lo, hi + 1):
            cases.append(
                _run_case(
                    identity_id,
                    n,
                    config.qorder,
                    config.seed,
                    config.spot_checks,
                    lambdas=lambdas,
                )
            )
    passed = sum(1 for c in cases if c.ok)
    for case in cases:
        _emit(case.to_record(), config.output_format, case.line())
    summary = {
        "type": "summary",
        "pass": passed == len(cases),
        "passed": passed,
        "total": len(cases),
    }
    _emit(summary, config.output_format, f"passed {passed}/{len(cases)}")
    return 0 if passed == len(cases) else 1


def _run_sequence(config: RunConfig) -> int:
    kind = config.sequence_kind
    hi = config.n_range[1]
    qorder = config.qorder
    rows: list[tuple[int, object]] = []
    if kind == "partitions":
        values = partition_p(hi)
        rows = list(enumerate(values))
    elif kind == "lambda":
        table = identities.lambda_sequence(hi, qorder)
        rows = [(n, str(table[n])) for n in range(hi + 1)]
    elif kind == "gaussian":
        m = config.gaussian_m
        rows = [(n, str(gaussian_binomial(n, m, qorder))) for n in range(hi + 1)]
    elif kind == "rogers-szego":
        rows = [(n, str(rogers_szego(n, qorder))) for n in range(hi + 1)]
    else:
        raise ValueError(f"unknown sequence kind {kind!r}")
    for n, value in rows:
        record = {"type": "sequence", "kind": kind, "n": n, "value": value}
        if kind == "gaussian":
            record["m"] = config.gaussian_m
        if kind != "partitions":
            record["qorder"] = qorder
        _emit(record, config.output_format, f"{n}\t{value}")
    return 0


def _run_expand(config: RunConfig) -> int:
    spec = load_spec(config.spec_path)
    result = expand_product(spec, config.torder, config.qorder)
    if config.output_format == "structured":
        record = {
            "type": "expansion",
            "name": spec.name,
            "torder": result.torder,
            "qorder": result.qorder,
            "coeffs": [str(c) for c in result.coeffs],
        }
        print(json.dumps(record, sort_keys=True))
    else:
        print(f"# {spec.name} torder={result.torder} qorder={result.qorder}")
        for n, coeff in enumerate(result.coeffs):
            print(f"t^{n}\t{coeff}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qconv",
        description="Exact verification of q-series convolution identities.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, with_range: bool) -> None:
        if with_range:
            p.add_argument("--n", required=True, metavar="lo..hi", help="inclusive range")
        p.add_argument("--qorder", type=int, default=None, metavar="N")
        p.add_argument(
            "--format", choices=("text", "structured"), default="text", dest="fmt"
        )

    p_verify = sub.add_parser("verify", help="check one identity family over a range")
    p_verify.add_argument("identity", choices=IDENTITY_IDS)
    add_common(p_verify, with_range=True)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--spot-checks", type=int, default=20, dest="spot_checks")

    p_all = sub.add_parser("verify-all", help="check every identity family")
    add_common(p_all, with_range=True)
    p_all.add_argument("--seed", type=int, default=0)
    p_all.add_argument("--spot-checks", type=int, default=20, dest="spot_checks")

    p_seq = sub.add_parser("sequence", help="emit a named sequence table")
    p_seq.add_argument(
        "kind", choices=("partitions", "lambda", "gaussian", "rogers-szego")
    )
    p_seq.add_argument("--max", type=int, required=True, dest="max_n")
    p_seq.add_argument("--qorder", type=int, default=None, metavar="N")
    p_seq.add_argument("--m", type=int, default=None)
    p_seq.add_argument(
        "--format", choices=("text", "structured"), default="text", dest="fmt"
    )

    p_expand = sub.add_parser("expand", help="expand a product spec file")
    p_expand.add_argument("--spec", required=True, dest="spec_path")
    p_expand.add_argument("--torder", type=int, required=True)
    p_expand.add_argument("--qorder", type=int, required=True)
    p_expand.add_argument(
        "--format", choices=("text", "structured"), default="text", dest="fmt"
    )
    return parser


def config_from_args(args: argparse.Namespace, parser: argparse.ArgumentParser) -> RunConfig:
    config = RunConfig(command=args.command, output_format=args.fmt)
    if args.command in ("verify", "verify-all"):
        try:
            lo, hi = parse_range(args.n)
        except ValueError as exc:
            parser.error(str(exc))
        if lo < 1:
            parser.error("identity checks start at n = 1")
        config.n_range = (lo, hi)
        config.qorder = args.qorder if args.qorder is not None else default_qorder(hi)
        config.seed = args.seed
        config.spot_checks = args.spot_checks
        if args.command == "verify":
            config.identity_id = args.identity
    elif args.command == "sequence":
        if args.max_n < 0:
            parser.error("--max must be nonnegative")
        if args.kind == "gaussian" and args.m is None:
            parser.error("sequence gaussian requires --m")
        config.sequence_kind = args.kind
        config.n_range = (0, args.max_n)
        config.qorder = (
            args.qorder if args.qorder is not None else default_qorder(args.max_n)
        )
        config.gaussian_m = args.m
    elif args.command == "expand":
        config.spec_path = args.spec_path
        config.torder = args.torder
        config.qorder = args.qorder
        if config.torder < 0:
            parser.error("--torder must be nonnegative")
    if config.qorder < 1:
        parser.error("--qorder must be >= 1")
    return config


def run(config: RunConfig) -> int:
    try:
        if config.command == "verify":
            return _verify_ids(config, [config.identity_id])
        if config.command == "verify-all":
            return _verify_ids(config, list(IDENTITY_IDS))
        if config.command == "sequence":
            return _run_sequence(config)
        if config.command == "expand":
            return _run_expand(config)
        raise ValueError(f"unknown command {config.command!r}")
    except SpecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        config = config_from_args(args, parser)
    except SystemExit as exc:
        code = exc.code if exc.code is not None else 0
        return code if isinstance(code, int) else 2
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
